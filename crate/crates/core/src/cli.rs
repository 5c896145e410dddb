//! Command-line front end. Every subcommand prints one report to stdout
//! and returns 0 on success, 1 when a check fails, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{AffineWeyl, CertificateRecord, WalkRecord};
use crate::descent::{
    self, cst_check, EquivalenceReport, EquivalenceRow, FiniteReflectionGroup, InvariantReport, ModuleSpec,
};
use crate::error::{Error, Result};
use crate::gkm::{
    self, BetaReport, EdgeRecord, HbarMode, KernelReport, MomentGraph, SectionTupleRecord, SeparationReport,
};
use crate::rational::{self, parse_q, RationalVector};
use crate::rootdata::{Isogeny, RootDatumSummary};

#[derive(Parser, Debug)]
#[command(name = "affine-descent", version, about = "Exact affine Weyl group, GKM and descent computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HbarArg {
    Formal,
    #[value(name = "1")]
    One,
}

impl From<HbarArg> for HbarMode {
    fn from(h: HbarArg) -> Self {
        match h {
            HbarArg::Formal => HbarMode::Formal,
            HbarArg::One => HbarMode::SetToOne,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Cartan type, e.g. A2, B2, G2, A1xA1.
    #[arg(long = "type", default_value = "A1")]
    pub type_label: String,
    /// adjoint, simply-connected, or lattice:ROWS with rows in simple-root
    /// coordinates separated by ';' (entries by ',').
    #[arg(long, default_value = "adjoint")]
    pub isogeny: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Roots, coroots, lattice and fundamental group.
    RootDatum {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Stabilizer certificate of a point, or of random points.
    Stabilizer {
        #[command(flatten)]
        datum: DatumArgs,
        /// Comma-separated rationals, optionally `;` and an imaginary part.
        #[arg(long, conflicts_with = "random")]
        point: Option<String>,
        /// Number of random points (denominators up to 12).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Shortest walk through alcoves around a point.
    Walk {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "e")]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Section spaces of the moment graph of a Bruhat interval.
    GkmSections {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value_t = 4)]
        maxdeg: u32,
        #[arg(long, value_enum, default_value_t = HbarArg::Formal)]
        hbar: HbarArg,
    },
    /// Adjacency functions against the GKM kernel, degree by degree.
    AdjacencyCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value_t = 6)]
        maxdeg: u32,
        #[arg(long, value_enum, default_value_t = HbarArg::One)]
        hbar: HbarArg,
        /// Extra degrees searched when a kernel piece is not yet generated.
        #[arg(long, default_value_t = gkm::LAG_SEARCH)]
        lag: u32,
    },
    /// The averaging section at a point.
    BetaCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        interval: String,
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
    /// Whether adjacency functions separate two arrows with a common head.
    Separates {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        gamma2: String,
        #[arg(long)]
        point: String,
    },
    /// Molien series, fundamental degrees and coinvariants of a stabilizer.
    Invariants {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long, default_value_t = 8)]
        maxdeg: usize,
    },
    /// Descent and derived isotropy of a module at one point.
    DescentCheck {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value = "0")]
        point: String,
        #[arg(long)]
        maxdeg: Option<i64>,
    },
    /// Both verdicts for modules over a point set.
    EquivalenceReport {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, required = true, num_args = 1..)]
        module: Vec<PathBuf>,
        /// Repeatable; defaults to the origin, an alcove interior point and an affine wall midpoint.
        #[arg(long)]
        point: Vec<String>,
        #[arg(long)]
        maxdeg: Option<i64>,
    },
}

/// Rendered report and whether its checks passed.
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

fn parse_isogeny(s: &str) -> Result<Isogeny> {
    match s {
        "adjoint" => Ok(Isogeny::Adjoint),
        "simply-connected" | "sc" => Ok(Isogeny::SimplyConnected),
        _ => {
            let rows = s.strip_prefix("lattice:").ok_or_else(|| Error::Parse(format!("unknown isogeny '{s}'")))?;
            let rows = rows
                .split(';')
                .map(|r| r.split(',').map(parse_q).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Isogeny::Lattice(rows))
        }
    }
}

fn affine_weyl(d: &DatumArgs) -> Result<AffineWeyl> {
    AffineWeyl::from_label(&d.type_label, parse_isogeny(&d.isogeny)?)
}

/// `re` or `re;im`.
pub fn parse_point(s: &str, n: usize) -> Result<(RationalVector, RationalVector)> {
    match s.split_once(';') {
        Some((re, im)) => Ok((RationalVector::parse(re, n)?, RationalVector::parse(im, n)?)),
        None => Ok((RationalVector::parse(s, n)?, RationalVector::zero(n))),
    }
}

fn real_point(s: &str, n: usize) -> Result<RationalVector> {
    let (re, im) = parse_point(s, n)?;
    if !im.is_zero() {
        return Err(Error::PreconditionViolated("this command takes a real point".into()));
    }
    Ok(re)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn ints(v: &[i64]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn render_root_datum(s: &RootDatumSummary, f: Format) -> String {
    match f {
        Format::Json => json(s),
        Format::Csv => csv_text(
            &["index", "root", "coroot"],
            s.positive_roots
                .iter()
                .zip(&s.positive_coroots)
                .enumerate()
                .map(|(i, (r, c))| vec![i.to_string(), ints(r), ints(c)])
                .collect(),
        ),
        Format::Table => {
            let mut o = String::new();
            let _ = writeln!(o, "type      {}", s.type_label);
            let _ = writeln!(o, "isogeny   {}", s.isogeny);
            let _ = writeln!(o, "rank      {}", s.rank);
            let _ = writeln!(o, "cartan    {:?}", s.cartan_matrix);
            let _ = writeln!(o, "roots     {}", s.num_roots);
            let _ = writeln!(o, "weyl      {}", s.weyl_order);
            let _ = writeln!(o, "lattice   {:?}", s.lattice_basis);
            let _ = writeln!(o, "pi1       order {} invariants {:?}", s.pi1_order, s.pi1_invariants);
            let _ = writeln!(o, "positive roots (root | coroot)");
            for (r, c) in s.positive_roots.iter().zip(&s.positive_coroots) {
                let _ = writeln!(o, "  {:<12} | {}", ints(r), ints(c));
            }
            o
        }
    }
}

fn render_certificates(recs: &[CertificateRecord], single: bool, f: Format) -> String {
    match f {
        Format::Json if single => json(&recs[0]),
        Format::Json => json(&recs),
        Format::Csv => csv_text(
            &[
                "re",
                "im",
                "order",
                "re_order",
                "phi_type",
                "generated_by_reflections",
                "parabolic",
                "injective",
                "alcove_count",
                "alcove_count_matches",
            ],
            recs.iter()
                .map(|r| {
                    let c = &r.checks;
                    vec![
                        r.re.to_string(),
                        r.im.to_string(),
                        r.order.to_string(),
                        r.re_order.to_string(),
                        r.phi_type.clone(),
                        c.generated_by_reflections.to_string(),
                        c.parabolic.to_string(),
                        c.injective.to_string(),
                        c.alcove_count.to_string(),
                        c.alcove_count_matches.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Table => {
            let mut o = String::new();
            for r in recs {
                let _ = writeln!(o, "point      {} ; {}", r.re, r.im);
                let _ = writeln!(o, "order      {} (real part: {})", r.order, r.re_order);
                let _ = writeln!(o, "phi_x      {} ({} roots)", r.phi_type, r.phi_x.len());
                let _ = writeln!(o, "alcove     {}", r.adjacent_alcove);
                for g in &r.generators {
                    let _ = writeln!(o, "generator  root {} level {}: {}", ints(&g.root), g.level, g.element);
                }
                for g in &r.wall_generators {
                    let _ = writeln!(o, "wall       root {} level {}: {}", ints(&g.root), g.level, g.element);
                }
                let _ = writeln!(o, "elements");
                for e in &r.elements {
                    let _ = writeln!(o, "  {e}");
                }
                let c = &r.checks;
                let _ = writeln!(
                    o,
                    "checks     fix={} reflections={} parabolic={} injective={} phi_closed={} alcoves={} ({})",
                    c.generators_fix_x,
                    c.generated_by_reflections,
                    c.parabolic,
                    c.injective,
                    c.phi_closed,
                    c.alcove_count,
                    c.alcove_count_matches
                );
                o.push('\n');
            }
            o
        }
    }
}

fn render_walk(w: &WalkRecord, f: Format) -> String {
    match f {
        Format::Json => json(w),
        Format::Csv => csv_text(
            &["step", "root", "level", "reflection", "alcove"],
            w.reflections
                .iter()
                .zip(w.alcoves.iter().skip(1))
                .enumerate()
                .map(|(i, (r, a))| {
                    vec![(i + 1).to_string(), ints(&r.root), r.level.clone(), r.element.clone(), a.clone()]
                })
                .collect(),
        ),
        Format::Table => {
            let mut o = format!("walk around {} from {} to {}\n", w.point, w.from, w.to);
            let _ = writeln!(o, "0  {}", w.alcoves[0]);
            for (i, (r, a)) in w.reflections.iter().zip(w.alcoves.iter().skip(1)).enumerate() {
                let _ = writeln!(o, "{}  {}   via root {} level {}", i + 1, a, ints(&r.root), r.level);
            }
            o
        }
    }
}

#[derive(Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct SectionsReport {
    pub type_label: String,
    pub interval: String,
    pub hbar: HbarMode,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    pub dims: Vec<usize>,
    /// Free-module prediction, formal mode only.
    pub predicted: Option<Vec<u64>>,
    pub basis: Vec<Vec<SectionTupleRecord>>,
}

fn render_sections(r: &SectionsReport, f: Format) -> String {
    match f {
        Format::Json => json(r),
        Format::Csv => csv_text(
            &["degree", "dim_sections", "predicted"],
            r.dims
                .iter()
                .enumerate()
                .map(|(d, n)| {
                    let p = r.predicted.as_ref().map_or(String::new(), |p| p[d].to_string());
                    vec![d.to_string(), n.to_string(), p]
                })
                .collect(),
        ),
        Format::Table => {
            let mut o = format!("{} interval {} (hbar {})\n", r.type_label, r.interval, r.hbar.label());
            let _ = writeln!(o, "vertices  {}", r.vertices.join(", "));
            for e in &r.edges {
                let _ = writeln!(o, "edge      {} -> {}  [{}]", e.source, e.target, e.label);
            }
            let _ = writeln!(o, "degree  dim  predicted");
            for (d, n) in r.dims.iter().enumerate() {
                let p = r.predicted.as_ref().map_or("-".to_string(), |p| p[d].to_string());
                let _ = writeln!(o, "{d:>6}  {n:>3}  {p:>9}");
            }
            o
        }
    }
}

fn render_kernel(r: &KernelReport, f: Format) -> String {
    match f {
        Format::Json => json(r),
        Format::Csv => csv_text(
            &["degree", "dim_adjacency", "dim_kernel", "equal"],
            r.rows
                .iter()
                .map(|k| {
                    vec![
                        k.degree.to_string(),
                        k.dim_adjacency.to_string(),
                        k.dim_kernel.to_string(),
                        k.equal.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Table => {
            let mut o = format!("hbar {}  vertices {}  edges {}\n", r.hbar.label(), r.vertices.len(), r.num_edges);
            let _ = writeln!(o, "degree  dim_adjacency  dim_kernel  equal  inclusion  generated_by");
            for k in &r.rows {
                let g = k.generated_by_degree.map_or("-".to_string(), |d| d.to_string());
                let _ = writeln!(
                    o,
                    "{:>6}  {:>13}  {:>10}  {:>5}  {:>9}  {:>12}",
                    k.degree, k.dim_adjacency, k.dim_kernel, k.equal, k.inclusion, g
                );
            }
            let sat = r.saturation_degree.map_or("none".to_string(), |d| d.to_string());
            let _ = writeln!(o, "saturation degree {sat}");
            o
        }
    }
}

fn render_beta(r: &BetaReport, f: Format) -> String {
    match f {
        Format::Json => json(r),
        Format::Csv => csv_text(
            &["point", "stabilizer_order", "degree", "retracts_t", "t_linear", "invariant"],
            vec![vec![
                r.point.to_string(),
                r.stabilizer.len().to_string(),
                r.degree.to_string(),
                r.retracts_t.to_string(),
                r.t_linear.to_string(),
                r.invariant.to_string(),
            ]],
        ),
        Format::Table => format!(
            "point {}  stabilizer {{{}}}\ndegree {}  retracts_t {}  t_linear {}  invariant {}\n",
            r.point,
            r.stabilizer.join(", "),
            r.degree,
            r.retracts_t,
            r.t_linear,
            r.invariant
        ),
    }
}

fn render_separation(r: &SeparationReport, f: Format) -> String {
    match f {
        Format::Json => json(r),
        Format::Csv => csv_text(
            &["separates", "class_a", "class_b", "by_generators"],
            vec![vec![r.separates.to_string(), r.class_a.clone(), r.class_b.clone(), r.by_generators.to_string()]],
        ),
        Format::Table => format!(
            "separates {}  (classes {} / {}, generators differ: {})\n",
            r.separates, r.class_a, r.class_b, r.by_generators
        ),
    }
}

fn render_invariants(r: &InvariantReport, f: Format) -> String {
    match f {
        Format::Json => json(r),
        Format::Csv => {
            let n = r.molien.len().max(r.coinvariant_dims.len());
            let cell = |v: Option<String>| v.unwrap_or_default();
            csv_text(
                &["degree", "molien", "invariants", "coinvariants"],
                (0..n)
                    .map(|k| {
                        vec![
                            k.to_string(),
                            cell(r.molien.get(k).map(ToString::to_string)),
                            cell(r.invariant_dims.get(k).map(ToString::to_string)),
                            cell(r.coinvariant_dims.get(k).map(ToString::to_string)),
                        ]
                    })
                    .collect(),
            )
        }
        Format::Table => {
            let mut o = String::new();
            let _ =
                writeln!(o, "order {}  reflections {}  reflection group {}", r.order, r.num_reflections, r.applicable);
            let _ = writeln!(o, "molien        {:?}", r.molien);
            let _ = writeln!(o, "invariants    {:?} (match {})", r.invariant_dims, r.molien_matches_reynolds);
            let _ = writeln!(o, "degrees       {:?}", r.fundamental_degrees);
            let _ = writeln!(o, "coinvariants  {:?} total {}", r.coinvariant_dims, r.coinvariant_dimension);
            o
        }
    }
}

fn row_cells(module: &str, r: &EquivalenceRow) -> Vec<String> {
    vec![
        module.to_string(),
        r.point.to_string(),
        r.stabilizer_order.to_string(),
        r.degree.to_string(),
        r.descends.to_string(),
        r.derived_isotropy.to_string(),
        r.naive_isotropy.to_string(),
        r.agree.to_string(),
        r.witness.as_ref().map_or(String::new(), ToString::to_string),
    ]
}

const VERDICT_COLUMNS: [&str; 9] = [
    "module",
    "point",
    "stabilizer_order",
    "degree",
    "descends",
    "derived_isotropy",
    "naive_isotropy",
    "agree",
    "witness",
];

fn render_verdicts(reports: &[EquivalenceReport], f: Format) -> String {
    match f {
        Format::Json => json(&reports),
        Format::Csv => csv_text(
            &VERDICT_COLUMNS,
            reports.iter().flat_map(|rep| rep.rows.iter().map(|r| row_cells(&rep.module, r))).collect(),
        ),
        Format::Table => {
            let mut o = String::new();
            let _ = writeln!(
                o,
                "{:<14} {:<14} {:>5} {:>3}  descends  derived  naive  agree",
                "module", "point", "|G|", "d"
            );
            for rep in reports {
                for r in &rep.rows {
                    let _ = writeln!(
                        o,
                        "{:<14} {:<14} {:>5} {:>3}  {:<8}  {:<7}  {:<5}  {}",
                        rep.module,
                        r.point.to_string(),
                        r.stabilizer_order,
                        r.degree,
                        r.descends,
                        r.derived_isotropy,
                        r.naive_isotropy,
                        r.agree
                    );
                    if let Some(w) = &r.witness {
                        let _ = writeln!(o, "  witness: {w}");
                    }
                }
            }
            o
        }
    }
}

/// Moment graph of `[e, w]`; a word given for `w` must be reduced.
fn interval_graph(aw: &AffineWeyl, interval: &str) -> Result<MomentGraph> {
    let w = aw.parse(interval)?;
    if !interval.contains('[') {
        let word = aw.parse_word(interval)?;
        if aw.length(&w) != word.len() {
            return Err(Error::Parse(format!("`{interval}` is not a reduced word")));
        }
    }
    MomentGraph::interval(aw, &w)
}

fn sections_report(aw: &AffineWeyl, interval: &str, maxdeg: u32, mode: HbarMode) -> Result<SectionsReport> {
    let g = interval_graph(aw, interval)?;
    let space = gkm::section_space(&g, maxdeg, mode);
    let predicted = (mode == HbarMode::Formal).then(|| (0..=maxdeg).map(|d| gkm::freeness_prediction(&g, d)).collect());
    let basis = space
        .pieces
        .iter()
        .map(|p| (0..p.dim()).map(|k| p.section(k, mode.nvars(g.rank())).to_record(aw, &g, mode)).collect())
        .collect();
    Ok(SectionsReport {
        type_label: aw.datum().label().to_string(),
        interval: interval.to_string(),
        hbar: mode,
        vertices: g.vertices.iter().map(|v| aw.format(v)).collect(),
        edges: g.edge_records(aw, mode),
        dims: space.dims(),
        predicted,
        basis,
    })
}

fn random_points(aw: &AffineWeyl, n: usize, seed: u64) -> Vec<RationalVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rational::random_vector(&mut rng, aw.rank(), 12)).collect()
}

/// Runs a parsed command.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::RootDatum { datum } => {
            let aw = affine_weyl(datum)?;
            let s = aw.datum().summary()?;
            Ok(Outcome { output: render_root_datum(&s, datum.format), ok: true })
        }
        Command::Stabilizer { datum, point, random, seed } => {
            let aw = affine_weyl(datum)?;
            let n = aw.rank();
            let points: Vec<(RationalVector, RationalVector)> = match (point, random) {
                (Some(p), _) => vec![parse_point(p, n)?],
                (None, Some(k)) => {
                    random_points(&aw, *k, *seed).into_iter().map(|p| (p, RationalVector::zero(n))).collect()
                }
                (None, None) => vec![(RationalVector::zero(n), RationalVector::zero(n))],
            };
            let recs: Vec<CertificateRecord> = crate::par::map(&points, |(re, im)| aw.stabilizer(re, im)?.record(&aw))
                .into_iter()
                .collect::<Result<_>>()?;
            let ok = recs.iter().all(|r| r.checks.all_pass());
            Ok(Outcome { output: render_certificates(&recs, random.is_none(), datum.format), ok })
        }
        Command::Walk { datum, point, from, to } => {
            let aw = affine_weyl(datum)?;
            let x = real_point(point, aw.rank())?;
            let p = aw.alcove_from_word(&aw.parse_word(from)?);
            let q = aw.alcove_from_word(&aw.parse_word(to)?);
            let w = aw.walk_record(&p, &q, &x)?;
            Ok(Outcome { output: render_walk(&w, datum.format), ok: true })
        }
        Command::GkmSections { datum, interval, maxdeg, hbar } => {
            let aw = affine_weyl(datum)?;
            let r = sections_report(&aw, interval, *maxdeg, (*hbar).into())?;
            let ok = r.predicted.as_ref().is_none_or(|p| p.iter().zip(&r.dims).all(|(&a, &b)| a == b as u64));
            Ok(Outcome { output: render_sections(&r, datum.format), ok })
        }
        Command::AdjacencyCheck { datum, interval, maxdeg, hbar, lag } => {
            let aw = affine_weyl(datum)?;
            let g = interval_graph(&aw, interval)?;
            let r = gkm::kernel_equality_report(&aw, &g, *maxdeg, (*hbar).into(), *lag);
            Ok(Outcome { output: render_kernel(&r, datum.format), ok: r.inclusion_everywhere() })
        }
        Command::BetaCheck { datum, interval, point, maxdeg } => {
            let aw = affine_weyl(datum)?;
            let x = real_point(point, aw.rank())?;
            let g = interval_graph(&aw, interval)?;
            let r = gkm::verify_beta_section(&aw, &x, &g, *maxdeg)?;
            Ok(Outcome { output: render_beta(&r, datum.format), ok: r.passed() })
        }
        Command::Separates { datum, gamma, gamma2, point } => {
            let aw = affine_weyl(datum)?;
            let y = real_point(point, aw.rank())?;
            let r = gkm::separates(&aw, &aw.parse(gamma)?, &aw.parse(gamma2)?, &y)?;
            Ok(Outcome { output: render_separation(&r, datum.format), ok: r.separates == r.by_generators })
        }
        Command::Invariants { datum, point, maxdeg } => {
            let aw = affine_weyl(datum)?;
            let (re, im) = parse_point(point, aw.rank())?;
            let cert = aw.stabilizer(&re, &im)?;
            let group = FiniteReflectionGroup::from_certificate(&aw, &cert)?;
            let r = cst_check(&group, *maxdeg)?;
            Ok(Outcome { output: render_invariants(&r, datum.format), ok: r.passed() })
        }
        Command::DescentCheck { datum, module, point, maxdeg } => {
            let aw = affine_weyl(datum)?;
            let spec = ModuleSpec::load(module)?;
            let x = real_point(point, aw.rank())?;
            let row = descent::check_at_point(&aw, &spec, &x, *maxdeg)?;
            let ok = row.descends;
            let rep = EquivalenceReport {
                module: spec.name().to_string(),
                type_label: aw.datum().label().to_string(),
                rows: vec![row],
            };
            Ok(Outcome { output: render_verdicts(&[rep], datum.format), ok })
        }
        Command::EquivalenceReport { datum, module, point, maxdeg } => {
            let aw = affine_weyl(datum)?;
            let points = if point.is_empty() {
                descent::default_points(&aw)
            } else {
                point.iter().map(|p| real_point(p, aw.rank())).collect::<Result<_>>()?
            };
            let mut reports = Vec::new();
            for path in module {
                let spec = ModuleSpec::load(path)?;
                reports.push(descent::equivalence_witness(&aw, &spec, &points, *maxdeg)?);
            }
            let ok = reports.iter().all(EquivalenceReport::all_agree);
            Ok(Outcome { output: render_verdicts(&reports, datum.format), ok })
        }
    }
}

/// Parses `args`, runs the command and writes its report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = write!(out, "{}", o.output);
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["affine-descent"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn stabilizer_at_origin() {
        let (code, out, _) = run_capture(&["stabilizer", "--type", "A1", "--point", "0", "--format", "json"]);
        assert_eq!(code, 0);
        let rec: CertificateRecord = serde_json::from_str(&out).unwrap();
        assert_eq!(rec.order, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&["stabilizer", "--bogus"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["stabilizer", "--type", "E9"]).0, 2);
        assert_eq!(run_capture(&["stabilizer", "--point", "1/0"]).0, 2);
    }

    #[test]
    fn isogeny_parsing() {
        assert_eq!(parse_isogeny("sc").unwrap(), Isogeny::SimplyConnected);
        assert!(matches!(parse_isogeny("lattice:1/2,1/2;1,0").unwrap(), Isogeny::Lattice(r) if r.len() == 2));
        assert!(parse_isogeny("weird").is_err());
    }

    #[test]
    fn point_with_imaginary_part() {
        let (re, im) = parse_point("1/2,0;0,1", 2).unwrap();
        assert_eq!(re.to_string(), "1/2,0");
        assert_eq!(im.to_string(), "0,1");
        assert!(real_point("0;1", 1).is_err());
    }
}
