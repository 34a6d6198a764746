//! Command-line frontend for the `zbrng` library.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code with the report: `0` success, `1` a check failed, `2` bad input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zbrng::exact::{format_cyc, CycNum, F3};
use zbrng::generators::{
    exterior_square, fixture_ds3, gen_kronecker, gen_paley, gen_sylvester, group_ring_smatrix,
    kac_peterson_a1, GroupSpec,
};
use zbrng::hadamard::{
    equiv_screen, f2_algebra_check, f2_algebra_tensor, had_closed_subsets, multiset_census,
    normalize_hadamard, parity_check, profile, reconstruct_exact, reconstruct_mod3,
    ring_from_hadamard, triangular_bound, v_rank, wmatrix, HadamardMatrix, Screen,
};
use zbrng::io::{
    format_hadamard, format_lift, format_ring, format_smatrix, parse_hadamard, parse_ring,
    parse_smatrix,
};
use zbrng::quotients::{fannsc_lift, order2_quotient, quotient_verify};
use zbrng::ring::FusionRing;
use zbrng::spectra::{
    closed_subset_heuristic, hadamard_type, involution_from_smatrix, smatrix_from_tensor,
    subring_smatrix, verlinde_tensor, SMatrix,
};
use zbrng::Error;

#[derive(Parser, Debug)]
#[command(name = "zbrng", version, about = "Z-based rngs, s-matrices and Hadamard rings")]
struct Cli {
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Cap on the size of the semigroup in `lift`.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: usize,
    /// Print a JSON report.
    #[arg(long, global = true)]
    machine: bool,
    /// Accepted for compatibility; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Out {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the six ring axioms.
    Verify { file: PathBuf },
    /// Identity coefficients and trace weights.
    Identity { file: PathBuf },
    /// s-matrix of a ring.
    Smatrix {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Structure constants of an s-matrix.
    Verlinde {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Closed subsets found by the row-agreement heuristic.
    Closed { file: PathBuf },
    /// Subring on a closed subset of a ring or s-matrix file.
    Subring {
        file: PathBuf,
        /// Comma-separated basis indices.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Quotient by `1 - b_d` for `b_d` of order two.
    Quotient2 {
        file: PathBuf,
        /// Index of the order-two basis element.
        #[arg(long)]
        element: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Lift to an algebra with nonnegative structure constants.
    Lift {
        file: PathBuf,
        /// Read a Hadamard matrix and lift its ring (s-matrix k H).
        #[arg(long)]
        hadamard: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Hadamard matrix tools.
    #[command(subcommand)]
    Had(Had),
    /// Generators.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand, Debug)]
enum Had {
    /// Ring of a Hadamard matrix.
    Ring {
        file: PathBuf,
        /// Check the odd-k parity of the structure constants.
        #[arg(long)]
        check_parity: bool,
        #[command(flatten)]
        out: Out,
    },
    Profile { file: PathBuf },
    /// Distinct multisets of |N_ij^m|.
    Census { file: PathBuf },
    Closed { file: PathBuf },
    Wmatrix {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Hadamard matrix from a ring file.
    Reconstruct {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Hadamard matrix mod 3 from a ring file, using constants mod 3 only.
    Reconstruct3 {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Check the algebra over F2 of order 4k.
    F2 {
        #[arg(long)]
        k: usize,
    },
    Vrank { file: PathBuf },
    Equiv { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// Sylvester matrix of order 2^m.
    Sylvester {
        m: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Paley matrix of order q + 1.
    Paley {
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    Kronecker {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Character table of a product of cyclic groups.
    Group {
        #[arg(required = true)]
        orders: Vec<u32>,
        #[command(flatten)]
        out: Out,
    },
    /// Exterior square of the character table of a product of cyclic groups.
    Ext2 {
        #[arg(required = true)]
        orders: Vec<u32>,
        #[command(flatten)]
        out: Out,
    },
    /// Kac-Peterson matrix of type A1 at a level.
    Kp {
        level: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Quotient of the double of S3 as a 6x6 s-matrix.
    Ds3 {
        #[command(flatten)]
        out: Out,
    },
}

/// Exit code and report text of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub report: String,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_verification_failure() {
            Failure::Check(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Outcome {
    passed: bool,
    lines: Vec<String>,
    data: Value,
    /// File contents produced by the command.
    output: Option<String>,
}

impl Outcome {
    fn new(passed: bool, lines: Vec<String>, data: Value) -> Self {
        Outcome {
            passed,
            lines,
            data,
            output: None,
        }
    }

    fn with_output(mut self, text: String) -> Self {
        self.output = Some(text);
        self
    }
}

type Res = std::result::Result<Outcome, Failure>;

pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult {
                code,
                report: e.to_string(),
            };
        }
    };
    let name = command_name(&cli.command);
    let machine = cli.machine;
    let out_path = output_path(&cli.command).cloned();
    let res = execute(&cli).and_then(|o| {
        if let (Some(path), Some(text)) = (&out_path, &o.output) {
            fs::write(path, text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(o)
    });
    match res {
        Ok(o) => {
            let code = if o.passed { 0 } else { 1 };
            let inline = if out_path.is_some() { None } else { o.output };
            let report = if machine {
                let mut v = json!({
                    "command": name,
                    "status": if o.passed { "ok" } else { "failed" },
                    "exit": code,
                    "report": o.lines,
                    "data": o.data,
                });
                if let Some(t) = inline {
                    v["output"] = Value::String(t);
                }
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                let mut s = String::new();
                for l in &o.lines {
                    s.push_str("# ");
                    s.push_str(l);
                    s.push('\n');
                }
                if let Some(p) = &out_path {
                    s.push_str(&format!("# wrote {}\n", p.display()));
                }
                if let Some(t) = inline {
                    s.push_str(&t);
                }
                s
            };
            CommandResult { code, report }
        }
        Err(f) => {
            let (code, status, msg) = match f {
                Failure::Check(m) => (1, "failed", m),
                Failure::Input(m) => (2, "error", m),
            };
            let report = if machine {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&json!({
                        "command": name,
                        "status": status,
                        "exit": code,
                        "message": msg,
                    }))
                    .unwrap()
                )
            } else {
                format!("{status}: {msg}\n")
            };
            CommandResult { code, report }
        }
    }
}

fn command_name(c: &Command) -> String {
    let s = format!("{c:?}");
    let head: String = s.chars().take_while(|ch| ch.is_alphanumeric()).collect();
    match c {
        Command::Had(h) => format!("had {}", first_word(&format!("{h:?}"))),
        Command::Gen(g) => format!("gen {}", first_word(&format!("{g:?}"))),
        _ => head.to_lowercase(),
    }
}

fn first_word(s: &str) -> String {
    s.chars()
        .take_while(|ch| ch.is_alphanumeric())
        .collect::<String>()
        .to_lowercase()
}

fn output_path(c: &Command) -> Option<&PathBuf> {
    let out = match c {
        Command::Smatrix { out, .. }
        | Command::Verlinde { out, .. }
        | Command::Subring { out, .. }
        | Command::Quotient2 { out, .. }
        | Command::Lift { out, .. } => out,
        Command::Had(
            Had::Ring { out, .. }
            | Had::Wmatrix { out, .. }
            | Had::Reconstruct { out, .. }
            | Had::Reconstruct3 { out, .. },
        ) => out,
        Command::Gen(
            Gen::Sylvester { out, .. }
            | Gen::Paley { out, .. }
            | Gen::Kronecker { out, .. }
            | Gen::Group { out, .. }
            | Gen::Ext2 { out, .. }
            | Gen::Kp { out, .. }
            | Gen::Ds3 { out },
        ) => out,
        _ => return None,
    };
    out.output.as_ref()
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_ring(path: &Path) -> std::result::Result<FusionRing, Failure> {
    let f = parse_ring(&read(path)?)?;
    Ok(FusionRing::from_tensor(f.n, f.tensor, f.tilde)?)
}

fn load_smatrix(path: &Path) -> std::result::Result<SMatrix, Failure> {
    Ok(parse_smatrix(&read(path)?)?)
}

fn load_hadamard(path: &Path) -> std::result::Result<HadamardMatrix, Failure> {
    Ok(normalize_hadamard(&parse_hadamard(&read(path)?)?)?)
}

fn is_ring_file(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("zbrng"))
}

fn ring_text(ring: &FusionRing) -> String {
    format_ring(ring.rank(), ring.tensor(), ring.tilde())
}

fn sets_json(sets: &[Vec<usize>]) -> Value {
    json!(sets)
}

fn set_text(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn execute(cli: &Cli) -> Res {
    let tol = cli.tol;
    match &cli.command {
        Command::Verify { file } => verify(file),
        Command::Identity { file } => identity(file),
        Command::Smatrix { file, .. } => {
            let ring = load_ring(file)?;
            if let Some((i, j, l)) = ring.associativity_witness() {
                return Err(Error::NotAssociative { i, j, l }.into());
            }
            let ring = ring.with_identity()?;
            let s = smatrix_from_tensor(&ring, tol)?;
            let kind = if s.is_exact() { "exact" } else { "numeric" };
            Ok(Outcome::new(
                true,
                vec![format!("s-matrix of rank {} ({kind})", s.n())],
                json!({"n": s.n(), "exact": s.is_exact()}),
            )
            .with_output(format_smatrix(&s)))
        }
        Command::Verlinde { file, .. } => {
            let s = load_smatrix(file)?;
            let t = verlinde_tensor(&s)?;
            let (tilde, note) = match involution_from_smatrix(&s, tol) {
                Ok(p) => (p, "involution from complex conjugation of columns".to_string()),
                Err(e) => ((0..t.n).collect(), format!("{e}; identity involution written")),
            };
            let lines = vec![
                format!("rank {}", t.n),
                format!("nonnegative: {}", t.nonnegative),
                format!("max deviation from integers: {:e}", t.max_deviation),
                note,
            ];
            let data = json!({
                "n": t.n, "nonnegative": t.nonnegative,
                "max_deviation": t.max_deviation, "involution": tilde,
            });
            Ok(Outcome::new(true, lines, data).with_output(format_ring(t.n, &t.tensor, &tilde)))
        }
        Command::Closed { file } => {
            let text = read(file)?;
            let s = if is_ring_file(&text) {
                let f = parse_ring(&text)?;
                let ring = FusionRing::new(f.n, f.tensor, f.tilde)?;
                smatrix_from_tensor(&ring, tol)?
            } else {
                parse_smatrix(&text)?
            };
            let res = closed_subset_heuristic(&s, tol)?;
            let mut lines: Vec<String> = res.sets.iter().map(|s| format!("closed {}", set_text(s))).collect();
            lines.extend(res.rejected.iter().map(|s| format!("rejected {}", set_text(s))));
            Ok(Outcome::new(
                true,
                lines,
                json!({"closed": sets_json(&res.sets), "rejected": sets_json(&res.rejected)}),
            ))
        }
        Command::Subring { file, set, .. } => {
            let text = read(file)?;
            if is_ring_file(&text) {
                let f = parse_ring(&text)?;
                let ring = FusionRing::new(f.n, f.tensor, f.tilde)?;
                let sub = ring.subring(set)?;
                Ok(Outcome::new(
                    true,
                    vec![format!("subring of rank {}", sub.rank())],
                    json!({"n": sub.rank()}),
                )
                .with_output(ring_text(&sub)))
            } else {
                let s = parse_smatrix(&text)?;
                let sub = subring_smatrix(&s, set, tol)?;
                Ok(Outcome::new(
                    true,
                    vec![format!("subring s-matrix of rank {}", sub.n())],
                    json!({"n": sub.n()}),
                )
                .with_output(format_smatrix(&sub)))
            }
        }
        Command::Quotient2 { file, element, .. } => {
            let ring = load_ring(file)?.with_identity()?;
            let q = order2_quotient(&ring, *element)?;
            let tilde: Vec<usize> = q
                .representatives
                .iter()
                .map(|&i| q.class_of[ring.tilde()[i]])
                .collect();
            let m = q.algebra.rank();
            let lines = vec![
                format!("quotient of rank {m}"),
                format!("class map {:?}", q.class_of),
                format!("nonnegative: {}", q.algebra.is_nonnegative()),
            ];
            let data = json!({
                "n": m, "class_of": q.class_of,
                "representatives": q.representatives,
                "nonnegative": q.algebra.is_nonnegative(),
            });
            Ok(Outcome::new(true, lines, data)
                .with_output(format_ring(m, &q.algebra.dense_tensor(), &tilde)))
        }
        Command::Lift { file, hadamard, .. } => lift(file, *hadamard, cli.cap, tol),
        Command::Had(h) => had(h),
        Command::Gen(g) => gen(g),
    }
}

fn verify(file: &Path) -> Res {
    let ring = load_ring(file)?;
    let report = ring.verify_axioms();
    let lines = report
        .checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("{}: pass", c.axiom.name())
            } else {
                format!("{}: FAIL at {:?}", c.axiom.name(), c.witness)
            }
        })
        .collect();
    let data: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"axiom": c.axiom.name(), "passed": c.passed, "witness": c.witness}))
        .collect();
    Ok(Outcome::new(report.all_passed(), lines, json!({"axioms": data})))
}

fn identity(file: &Path) -> Res {
    let ring = load_ring(file)?.with_identity()?;
    let e = ring.identity_coefficients()?;
    let e_text: Vec<String> = e.iter().map(format_cyc).collect();
    let weights: Vec<String> = e.iter().map(|x| format_cyc(&x.conj())).collect();
    Ok(Outcome::new(
        true,
        vec![
            format!("e = {}", e_text.join(" ")),
            format!("trace weights = {}", weights.join(" ")),
        ],
        json!({"identity": e_text, "trace_weights": weights}),
    ))
}

fn lift(file: &Path, hadamard: bool, cap: usize, tol: f64) -> Res {
    let s = if hadamard {
        let h = load_hadamard(file)?;
        let k = h.k() as i64;
        let rows: Vec<Vec<i64>> = h.rows().iter().map(|r| r.iter().map(|x| k * x).collect()).collect();
        SMatrix::from_ints(&rows)?
    } else {
        load_smatrix(file)?
    };
    let lift = fannsc_lift(&s, cap)?;
    let t = verlinde_tensor(&s)?;
    let tilde = involution_from_smatrix(&s, tol).unwrap_or_else(|_| (0..t.n).collect());
    let ring = FusionRing::from_tensor(t.n, t.tensor, tilde)?;
    let verified = quotient_verify(&lift, &ring);
    let m = lift.lifted.rank();
    let lines = vec![
        format!("lifted rank |H| = {m}"),
        format!("nonnegative: {}", lift.lifted.is_nonnegative()),
        format!("ideal generators: {}", lift.ideal_generators().len()),
        format!("verified: {verified}"),
    ];
    let data = json!({
        "rank": m,
        "nonnegative": lift.lifted.is_nonnegative(),
        "distinguished": lift.distinguished,
        "scalars": lift.scalars.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "verified": verified,
    });
    Ok(Outcome::new(verified && lift.lifted.is_nonnegative(), lines, data).with_output(format_lift(&lift)))
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    if rows.iter().flatten().all(|&x| x == 1 || x == -1) {
        return format_hadamard(rows);
    }
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn had(h: &Had) -> Res {
    match h {
        Had::Ring { file, check_parity, .. } => {
            let m = load_hadamard(file)?;
            let ring = ring_from_hadamard(&m)?;
            let mut lines = vec![format!("order {}, k = {}", m.n(), m.k())];
            let mut passed = true;
            let mut data = json!({"n": m.n(), "k": m.k()});
            if *check_parity {
                let ok = parity_check(&ring)?;
                lines.push(format!("parity: {}", if ok { "holds" } else { "FAILS" }));
                data["parity"] = json!(ok);
                passed = ok;
            }
            Ok(Outcome::new(passed, lines, data).with_output(ring_text(&ring)))
        }
        Had::Profile { file } => {
            let m = load_hadamard(file)?;
            let p = profile(&m)?;
            let lines = p.iter().map(|(k, c)| format!("p = {k}: {c}")).collect();
            let data: serde_json::Map<String, Value> =
                p.iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
            Ok(Outcome::new(true, lines, json!({"profile": data})))
        }
        Had::Census { file } => {
            let m = load_hadamard(file)?;
            let ring = ring_from_hadamard(&m)?;
            let census = multiset_census(&ring);
            let mut lines: Vec<String> = census
                .iter()
                .map(|ms| {
                    let parts: Vec<String> = ms.iter().map(|(v, c)| format!("{v}x{c}")).collect();
                    format!("multiset {{{}}}", parts.join(", "))
                })
                .collect();
            let mut passed = true;
            let mut bound_json = Value::Null;
            if m.k() % 2 == 1 && m.k() >= 3 {
                let bound = triangular_bound(m.k() as u64)?;
                passed = census.len() as u128 <= bound;
                lines.push(format!("{} multisets, bound {bound}", census.len()));
                bound_json = json!(bound.to_string());
            }
            Ok(Outcome::new(
                passed,
                lines,
                json!({"multisets": census, "bound": bound_json}),
            ))
        }
        Had::Closed { file } => {
            let m = load_hadamard(file)?;
            let sets = had_closed_subsets(&ring_from_hadamard(&m)?)?;
            let lines = sets.iter().map(|s| format!("closed {}", set_text(s))).collect();
            Ok(Outcome::new(true, lines, json!({"closed": sets})))
        }
        Had::Wmatrix { file, index, .. } => {
            let m = load_hadamard(file)?;
            let w = wmatrix(&ring_from_hadamard(&m)?, *index)?;
            let k = m.k() as i64;
            Ok(Outcome::new(
                true,
                vec![format!("W_{index} is {0}x{0} with W W^T = {1} I", w.len(), 2 * k * k + 2)],
                json!({"size": w.len(), "norm": 2 * k * k + 2}),
            )
            .with_output(matrix_text(&w)))
        }
        Had::Reconstruct { file, .. } => {
            let ring = load_ring(file)?;
            let m = reconstruct_exact(&ring)?;
            Ok(Outcome::new(true, vec![format!("order {}", m.n())], json!({"n": m.n()}))
                .with_output(format_hadamard(&m.rows())))
        }
        Had::Reconstruct3 { file, .. } => {
            let ring = load_ring(file)?;
            let k = hadamard_type(&ring)
                .ok_or_else(|| Failure::Input("not a ring of Hadamard type".into()))?;
            let n = ring.rank();
            let t: Vec<F3> = ring.tensor().iter().map(|&x| F3::new(x)).collect();
            let rows = reconstruct_mod3(n, &t, k as u64)?;
            Ok(Outcome::new(true, vec![format!("order {n} mod 3")], json!({"n": n}))
                .with_output(format_hadamard(&rows)))
        }
        Had::F2 { k } => {
            let ok = f2_algebra_check(4 * k, &f2_algebra_tensor(*k)?);
            Ok(Outcome::new(
                ok,
                vec![format!("algebra of dimension {} over F2: {}", 4 * k, if ok { "commutative and associative" } else { "FAILS" })],
                json!({"dimension": 4 * k, "holds": ok}),
            ))
        }
        Had::Vrank { file } => {
            let m = load_hadamard(file)?;
            let r = v_rank(&m)?;
            let bound = 4 * m.k() - 2;
            Ok(Outcome::new(
                r <= bound,
                vec![format!("rank {r}, bound {bound}")],
                json!({"rank": r, "bound": bound}),
            ))
        }
        Had::Equiv { a, b } => {
            let s = equiv_screen(&load_hadamard(a)?, &load_hadamard(b)?)?;
            let word = match s {
                Screen::Inequivalent => "inequivalent",
                Screen::Indistinguishable => "indistinguishable",
            };
            Ok(Outcome::new(true, vec![word.to_string()], json!({"result": word})))
        }
    }
}

fn exact_table(orders: &[u32]) -> std::result::Result<zbrng::exact::Matrix<CycNum>, Failure> {
    match group_ring_smatrix(&GroupSpec::new(orders.to_vec())?)? {
        SMatrix::Exact(m) => Ok(m),
        SMatrix::Numeric(_) => Err(Failure::Input("character table is not exact".into())),
    }
}

fn gen(g: &Gen) -> Res {
    let had_out = |h: HadamardMatrix| {
        Outcome::new(true, vec![format!("order {}", h.n())], json!({"n": h.n()}))
            .with_output(format_hadamard(&h.rows()))
    };
    let s_out = |s: SMatrix| {
        Outcome::new(true, vec![format!("s-matrix of rank {}", s.n())], json!({"n": s.n()}))
            .with_output(format_smatrix(&s))
    };
    Ok(match g {
        Gen::Sylvester { m, .. } => had_out(gen_sylvester(*m)?),
        Gen::Paley { q, .. } => had_out(gen_paley(*q)?),
        Gen::Kronecker { a, b, .. } => had_out(gen_kronecker(&load_hadamard(a)?, &load_hadamard(b)?)?),
        Gen::Group { orders, .. } => s_out(SMatrix::exact(exact_table(orders)?)?),
        Gen::Ext2 { orders, .. } => s_out(SMatrix::exact(exterior_square(&exact_table(orders)?)?)?),
        Gen::Kp { level, .. } => s_out(kac_peterson_a1(*level)?),
        Gen::Ds3 { .. } => s_out(SMatrix::from_ints(&fixture_ds3())?),
    })
}
