use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mcover::completion::{dm_completion, verify_theorem_mtamari, CompletionReport};
use mcover::count::{binomial, fuss_catalan};
use mcover::dyck::{mtamari, MDyckPath};
use mcover::generate::random_bounded_poset;
use mcover::io::{path_from_json, poset_from_json, poset_to_json, to_dot};
use mcover::iso::is_isomorphic;
use mcover::mcover::{
    hasse_minus_bottom_is_rooted_tree, mcover, predicted_join_irreducibles, predicted_length,
    predicted_meet_irreducibles, predicted_size,
};
use mcover::path::{is_path_poset_shape, satisfies_condition_s};
use mcover::poset::Poset;
use mcover::strip::{bounce, is_valid_delta_fan, strip_decompose, BounceOrder, ConjectureReport, Fan};
use mcover::verify::{self, CheckRow};
use mcover::Error;

const EXIT_CLAIM: u8 = 4;

#[derive(Parser)]
#[command(name = "mcover", version, about = "m-cover posets, m-Tamari lattices and their verification suites")]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Shared {
    /// Input file (poset JSON, or path JSON for `strip`).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file for the serialized artifact or report; stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Serialization of the artifact or report.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Seed for generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Backtracking budget for isomorphism searches.
    #[arg(long, global = true, default_value_t = mcover::iso::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate order-theoretic predicates of a poset.
    Poset(PosetArgs),
    /// Build the m-cover poset and compare it with the closed forms.
    Mcover(McoverArgs),
    /// Build the m-Tamari lattice.
    Tamari(TamariArgs),
    /// Dedekind-MacNeille completion of a poset, or of T_n<m>.
    Dm(DmArgs),
    /// Strip decomposition and bouncing of one m-Dyck path.
    Strip(StripArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args)]
struct PosetArgs {
    /// Comma-separated predicates; all of them when absent.
    #[arg(long, value_delimiter = ',')]
    check: Vec<Predicate>,
    /// Write the Hasse diagram as DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Generate a random bounded poset with this many inner elements instead of reading `--in`.
    #[arg(long)]
    random: Option<usize>,
    /// Relation density for `--random`.
    #[arg(long, default_value_t = 0.4)]
    density: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Bounded,
    Lattice,
    TwoPlusTwoFree,
    LeftModular,
    Extremal,
    Trim,
    TreeCriterion,
    ConditionS,
    PathShape,
}

impl Predicate {
    const ALL: [Predicate; 9] = [
        Predicate::Bounded,
        Predicate::Lattice,
        Predicate::TwoPlusTwoFree,
        Predicate::LeftModular,
        Predicate::Extremal,
        Predicate::Trim,
        Predicate::TreeCriterion,
        Predicate::ConditionS,
        Predicate::PathShape,
    ];

    fn name(self) -> &'static str {
        match self {
            Predicate::Bounded => "bounded",
            Predicate::Lattice => "lattice",
            Predicate::TwoPlusTwoFree => "two-plus-two-free",
            Predicate::LeftModular => "left-modular",
            Predicate::Extremal => "extremal",
            Predicate::Trim => "trim",
            Predicate::TreeCriterion => "tree-criterion",
            Predicate::ConditionS => "condition-s",
            Predicate::PathShape => "path-shape",
        }
    }

    fn eval(self, p: &Poset) -> mcover::Result<bool> {
        match self {
            Predicate::Bounded => Ok(p.is_bounded()),
            Predicate::Lattice => Ok(p.is_lattice()),
            Predicate::TwoPlusTwoFree => Ok(p.is_two_plus_two_free()),
            Predicate::LeftModular => p.is_left_modular(),
            Predicate::Extremal => p.is_extremal(),
            Predicate::Trim => p.is_trim(),
            Predicate::TreeCriterion => hasse_minus_bottom_is_rooted_tree(p),
            Predicate::ConditionS => satisfies_condition_s(p),
            Predicate::PathShape => is_path_poset_shape(p),
        }
    }
}

#[derive(Args)]
struct McoverArgs {
    #[arg(short, long)]
    m: usize,
}

#[derive(Args)]
struct TamariArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    m: usize,
}

#[derive(Args)]
struct DmArgs {
    /// Complete T_n<m> and compare with T_n^(m) instead of reading `--in`.
    #[arg(short, long, requires = "m")]
    n: Option<usize>,
    #[arg(short, long, requires = "n")]
    m: Option<usize>,
}

#[derive(Args)]
struct StripArgs {
    /// Step sequence, e.g. `0,2,4`; alternatively `--in` with path JSON.
    #[arg(short, long, value_delimiter = ',')]
    u: Vec<usize>,
    #[arg(short, long)]
    m: Option<usize>,
    /// Apply the pairwise steps of the bouncing map right to left.
    #[arg(long)]
    reversed: bool,
}

#[derive(Subcommand)]
enum Suite {
    /// Size, length and irreducibles of P<m> on all small bounded posets.
    Cardinality(Exhaustive),
    /// Lattice property of P<m> against the tree and meet criteria.
    #[command(name = "theorem-1.1")]
    Theorem11(Exhaustive),
    /// (2+2)-freeness, path-poset shape and left-modularity of P<m>.
    #[command(name = "theorem-1.2")]
    Theorem12(Family),
    /// Trimness of P<m> and the Moebius rule.
    #[command(name = "theorem-1.3")]
    Theorem13(Family),
    /// Cover statistics of P_{k,l}<m>.
    CoverStatistic {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        l: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        m: Vec<usize>,
    },
    /// Fuss-Catalan counts and irreducibles of T_n^(m).
    Tamari {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 3)]
        irr_m_max: usize,
    },
    /// DM(T_n<m>) against T_n^(m).
    #[command(name = "theorem-1.4")]
    Theorem14 {
        /// Comma-separated `n:m` pairs.
        #[arg(long, value_delimiter = ',', default_value = "3:2,3:3,4:2,4:3,5:2", value_parser = parse_pair)]
        pairs: Vec<(usize, usize)>,
    },
    /// Strip decomposition round trip, image and fan counts.
    Strip {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 4)]
        image_n_max: usize,
        #[arg(long, default_value_t = 3)]
        image_m_max: usize,
    },
    /// Monotonicity of the strip decomposition and shape of the bouncing map.
    Bounce {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
    },
    /// The conjectured realization of T_n^(m) by bounced fans.
    Conjecture {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        /// Apply the pairwise steps of the bouncing map right to left.
        #[arg(long)]
        reversed: bool,
        /// Report `elapsed_ms` as 0 so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// The three counterexamples to naive order preservation.
    Counterexamples,
    /// The lattice criteria on seeded random bounded posets.
    Random {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        inner: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        m: Vec<usize>,
    },
}

#[derive(Args)]
struct Exhaustive {
    /// Largest poset size.
    #[arg(long, default_value_t = 6)]
    exhaustive_n: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    m: Vec<usize>,
}

#[derive(Args)]
struct Family {
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = 3)]
    l_max: usize,
    /// Longest northeast word.
    #[arg(long, default_value_t = 3)]
    w_max: usize,
    /// Largest generated poset satisfying the tree criterion.
    #[arg(long, default_value_t = 7)]
    tree_max: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    m: Vec<usize>,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected n:m, got {s}"))?;
    let n = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let m = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok((n, m))
}

/// Failure of a run: a library error or a refuted claim.
enum Failure {
    Lib(Error),
    Io(io::Error),
    Claim(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        // A closed downstream pipe is a normal way to stop reading.
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Claim(msg)) => {
            eprintln!("claim failed: {msg}");
            ExitCode::from(EXIT_CLAIM)
        }
    }
}

fn run(cli: Cli) -> Run {
    let sh = cli.shared;
    match cli.command {
        Command::Poset(a) => cmd_poset(&sh, a),
        Command::Mcover(a) => cmd_mcover(&sh, a),
        Command::Tamari(a) => cmd_tamari(&sh, a),
        Command::Dm(a) => cmd_dm(&sh, a),
        Command::Strip(a) => cmd_strip(&sh, a),
        Command::Verify { suite } => cmd_verify(&sh, suite),
    }
}

fn open_out(sh: &Shared) -> io::Result<Box<dyn Write>> {
    Ok(match &sh.out {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn read_input(sh: &Shared) -> Result<String, Failure> {
    let p = sh.input.as_ref().ok_or_else(|| Error::Parse("--in is required".into()))?;
    fs::read_to_string(p).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", p.display()))))
}

fn read_poset(sh: &Shared) -> Result<Poset, Failure> {
    Ok(poset_from_json(&read_input(sh)?)?)
}

/// Writes `p` in the requested format, if any.
fn emit_poset(sh: &Shared, p: &Poset) -> Run {
    let text = match sh.format {
        None => return Ok(()),
        Some(Format::Dot) => to_dot(p),
        Some(Format::Json) => poset_to_json(p) + "\n",
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["lower", "upper"])?;
            for (a, b) in p.covers() {
                w.write_record([p.label(a), p.label(b)])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf8")
        }
    };
    let mut out = open_out(sh)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn cmd_poset(sh: &Shared, a: PosetArgs) -> Run {
    let p = match a.random {
        Some(k) => random_bounded_poset(sh.seed, k, a.density),
        None => read_poset(sh)?,
    };
    let checks = if a.check.is_empty() { Predicate::ALL.to_vec() } else { a.check };
    let mut parts = Vec::new();
    for c in checks {
        let v = c.eval(&p).map_err(|e| match e {
            Error::NotALattice | Error::Unbounded | Error::Precondition(_) => {
                Error::Precondition(format!("{}: {e}", c.name()))
            }
            other => other,
        })?;
        parts.push(format!("{}: {v}", c.name()));
    }
    println!("{}", parts.join(", "));
    if let Some(path) = a.dot {
        fs::write(path, to_dot(&p))?;
    }
    emit_poset(sh, &p)
}

fn cmd_mcover(sh: &Shared, a: McoverArgs) -> Run {
    let p = read_poset(sh)?;
    let c = mcover(&p, a.m)?;
    let q = &c.poset;
    let mut line = format!(
        "size {} (formula {}), length {} (formula {})",
        c.len(),
        predicted_size(&p, a.m)?,
        q.length(),
        predicted_length(&p, a.m)
    );
    let tuples = |idx: Vec<usize>| -> std::collections::BTreeSet<Vec<usize>> {
        idx.into_iter().map(|i| c.elements[i].clone()).collect()
    };
    let (j, mi) = (tuples(q.join_irreducibles()), tuples(q.meet_irreducibles()));
    line.push_str(&format!(
        ", J {} (predicted {}), M {} (predicted {}), lattice {}",
        j.len(),
        predicted_join_irreducibles(&p, a.m)?.len(),
        mi.len(),
        predicted_meet_irreducibles(&p, a.m)?.len(),
        q.is_lattice()
    ));
    if a.m == 1 {
        line.push_str(&format!(", isomorphic to input {}", is_isomorphic(q, &p, sh.budget)?));
    }
    println!("{line}");
    emit_poset(sh, q)
}

fn cmd_tamari(sh: &Shared, a: TamariArgs) -> Run {
    let t = mtamari(a.n, a.m)?;
    println!(
        "elements {} (Fuss-Catalan {}), J {}, M {} (m*C(n,2) = {})",
        t.len(),
        fuss_catalan(a.n as u64, a.m as u64),
        t.poset.join_irreducibles().len(),
        t.poset.meet_irreducibles().len(),
        a.m as u128 * binomial(a.n as u64, 2)
    );
    emit_poset(sh, &t.poset)
}

fn cmd_dm(sh: &Shared, a: DmArgs) -> Run {
    if let (Some(n), Some(m)) = (a.n, a.m) {
        let r = verify_theorem_mtamari(n, m, sh.budget)?;
        println!("{}", serde_json::to_string(&r).expect("serializable"));
        if sh.format.is_some() {
            let cover = mcover(&mtamari(n, 1)?.poset, m)?;
            emit_poset(sh, &dm_completion(&cover.poset).lattice)?;
        }
        return if r.passed() { Ok(()) } else { Err(Failure::Claim(format!("DM(T_{n}<{m}>) differs from T_{n}^({m})"))) };
    }
    let p = read_poset(sh)?;
    let dm = dm_completion(&p);
    println!("input {}, completed {}, added {}", p.len(), dm.cuts.len(), dm.added().len());
    emit_poset(sh, &dm.lattice)
}

#[derive(Serialize)]
struct StripOut {
    m: usize,
    u: Vec<usize>,
    delta: Vec<Vec<usize>>,
    zeta: Vec<Vec<usize>>,
    zeta_valid: bool,
}

fn fan_steps(f: &Fan) -> Vec<Vec<usize>> {
    f.0.iter().map(|q| q.steps().to_vec()).collect()
}

fn cmd_strip(sh: &Shared, a: StripArgs) -> Run {
    let p = if a.u.is_empty() {
        path_from_json(&read_input(sh)?)?
    } else {
        let m = a.m.ok_or_else(|| Error::Parse("-m is required with -u".into()))?;
        MDyckPath::new(m, a.u)?
    };
    let tn = mtamari(p.n(), 1)?;
    let order = if a.reversed { BounceOrder::Reversed } else { BounceOrder::Standard };
    let delta = strip_decompose(&p);
    let zeta = bounce(&tn, &delta, order)?;
    if sh.format == Some(Format::Json) {
        let o = StripOut {
            m: p.m(),
            u: p.steps().to_vec(),
            delta: fan_steps(&delta),
            zeta: fan_steps(&zeta),
            zeta_valid: is_valid_delta_fan(&zeta),
        };
        let mut out = open_out(sh)?;
        writeln!(out, "{}", serde_json::to_string(&o).expect("serializable"))?;
        out.flush()?;
    } else {
        println!("path {p}, delta {delta}, zeta {zeta}, zeta valid {}", is_valid_delta_fan(&zeta));
    }
    Ok(())
}

/// Streams rows in grid order and remembers the first failure.
struct RowWriter {
    out: Box<dyn Write>,
    json: bool,
    header_written: bool,
    first_failure: Option<String>,
    error: Option<io::Error>,
}

impl RowWriter {
    fn new(sh: &Shared) -> io::Result<Self> {
        Ok(RowWriter {
            out: open_out(sh)?,
            json: sh.format == Some(Format::Json),
            header_written: false,
            first_failure: None,
            error: None,
        })
    }

    /// One CSV record or one JSON line per row, flushed immediately.
    fn write<T: Serialize>(&mut self, header: &[&str], record: &[String], json: &T, passed: bool, instance: &str) {
        if !passed && self.first_failure.is_none() {
            self.first_failure = Some(instance.to_string());
        }
        let res = (|| -> io::Result<()> {
            if self.json {
                writeln!(self.out, "{}", serde_json::to_string(json).expect("serializable"))?;
            } else {
                let mut w = csv::Writer::from_writer(Vec::new());
                if !self.header_written {
                    w.write_record(header)?;
                    self.header_written = true;
                }
                w.write_record(record)?;
                self.out.write_all(&w.into_inner().map_err(|e| e.into_error())?)?;
            }
            self.out.flush()
        })();
        if let Err(e) = res {
            self.error.get_or_insert(e);
        }
    }

    fn check_row(&mut self, r: &CheckRow) {
        let record = [r.suite.clone(), r.instance.clone(), r.passed.to_string(), r.detail.clone()];
        self.write(&["suite", "instance", "passed", "detail"], &record, r, r.passed, &format!("{} {}", r.suite, r.instance));
    }

    fn conjecture_row(&mut self, r: &ConjectureReport) {
        let record = [
            r.n.to_string(),
            r.m.to_string(),
            r.path_count.to_string(),
            r.injective.to_string(),
            r.order_iso.to_string(),
            r.elapsed_ms.to_string(),
        ];
        let header = ["n", "m", "path_count", "injective", "order_iso", "elapsed_ms"];
        self.write(&header, &record, r, r.holds(), &format!("conjecture n={} m={}", r.n, r.m));
    }

    fn completion_row(&mut self, r: &CompletionReport) {
        let record = [
            r.n.to_string(),
            r.m.to_string(),
            r.input_size.to_string(),
            r.completed_size.to_string(),
            r.expected_size.to_string(),
            r.isomorphic.to_string(),
            r.passed().to_string(),
        ];
        let header = ["n", "m", "input_size", "completed_size", "expected_size", "isomorphic", "passed"];
        self.write(&header, &record, r, r.passed(), &format!("theorem-1.4 n={} m={}", r.n, r.m));
    }

    fn finish(self) -> Run {
        if let Some(e) = self.error {
            return Err(Failure::Io(e));
        }
        match self.first_failure {
            Some(f) => Err(Failure::Claim(f)),
            None => Ok(()),
        }
    }
}

fn cmd_verify(sh: &Shared, suite: Suite) -> Run {
    if sh.format == Some(Format::Dot) {
        return Err(Error::Parse("verification reports are csv or json".into()).into());
    }
    let mut w = RowWriter::new(sh)?;
    match suite {
        Suite::Theorem14 { pairs } => {
            for (n, m) in pairs {
                w.completion_row(&verify_theorem_mtamari(n, m, sh.budget)?);
            }
        }
        Suite::Conjecture { n_max, m_max, reversed, no_timing } => {
            let order = if reversed { BounceOrder::Reversed } else { BounceOrder::Standard };
            verify::conjecture_grid(n_max, m_max, order, &mut |r| {
                let mut r = r.clone();
                if no_timing {
                    r.elapsed_ms = 0;
                }
                w.conjecture_row(&r);
            })?;
        }
        other => {
            let mut sink = |r: &CheckRow| w.check_row(r);
            check_suite(sh, other, &mut sink)?;
        }
    }
    w.finish()
}

fn check_suite(sh: &Shared, suite: Suite, s: verify::Sink) -> mcover::Result<()> {
    let s = Some(s);
    match suite {
        Suite::Cardinality(e) => verify::cardinality(e.exhaustive_n, &e.m, s)?,
        Suite::Theorem11(e) => verify::theorem_lattice(e.exhaustive_n, &e.m, s)?,
        Suite::Theorem12(f) => {
            let fam = verify::tree_family(f.k_max, f.l_max, f.w_max, f.tree_max)?;
            verify::theorem_left_modular(&fam, &f.m, s)?
        }
        Suite::Theorem13(f) => {
            let fam = verify::tree_family(f.k_max, f.l_max, f.w_max, f.tree_max)?;
            verify::theorem_trim(&fam, &f.m, s)?
        }
        Suite::CoverStatistic { k, l, m } => verify::cover_statistic_suite(&k, &l, &m, s)?,
        Suite::Tamari { n_max, m_max, irr_m_max } => verify::tamari_structure(n_max, m_max, irr_m_max, s)?,
        Suite::Strip { n_max, m_max, image_n_max, image_m_max } => {
            verify::strip_suite(n_max, m_max, image_n_max, image_m_max, s)?
        }
        Suite::Bounce { n_max, m_max } => verify::bounce_suite(n_max, m_max, s)?,
        Suite::Counterexamples => verify::counterexamples(s)?,
        Suite::Random { count, inner, density, m } => {
            let posets: Vec<(String, Poset)> = (0..count as u64)
                .map(|i| {
                    let seed = sh.seed.wrapping_add(i);
                    (format!("seed={seed}"), random_bounded_poset(seed, inner, density))
                })
                .collect();
            verify::theorem_lattice_on(&posets, &m, s)?
        }
        Suite::Theorem14 { .. } | Suite::Conjecture { .. } => unreachable!("dispatched by cmd_verify"),
    };
    Ok(())
}
