use std::fs;
use std::io::{self, Read};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qgr_core::extquiver::{compare_posets, cyclic_vertices, ext_quiver, gamma, Equivalence};
use qgr_core::growth::strongly_connected_cycles;
use qgr_core::k0::{delta_contains, k0, n_closed_form, positive_cone_oracle, ConeVerdict, OrderedK0};
use qgr_core::linalg::{parse_rat, rat, Rat};
use qgr_core::matricial::{
    bratteli, endo_block_dims, endo_blocks_json, gk1_report, matricial_report, noetherian_check, Gk1Report,
};
use qgr_core::monomial::{parse_algebra, ufnarovskii_graph, MonomialPresentation};
use qgr_core::oracles::{doubly_cyclic_oracle, poset_iso_bruteforce, ISO_CAP};
use qgr_core::points::{
    build_extension, classify_point_module, cyclic_point_module, is_split_extension, normalize_for_extension,
    point_module_along, qgr_hom_dim, SplitVerdict, TruncatedGradedRep,
};
use qgr_core::{gk_dimension, BigInt, parse_quiver, parse_quiver_json, serialize, Format, QgrError, Quiver};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INFINITE_GK: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "qgr", version, about = "Invariants of QGr for path algebras and monomial algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Truncation degree D for graded representations.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u64).range(1..))]
    cap_degree: u64,
    /// Iteration cap for the direct-limit cone test.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    cap_iterations: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Human)]
    format: OutFormat,
    /// Echo the normalized (Veronese) data used by the computation.
    #[arg(long, global = true)]
    normalized: bool,
    /// Re-check the answer with the brute-force oracles (small inputs only).
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Human,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// GK-dimension, or the doubly cyclic vertices when it is infinite.
    Gk { input: PathBuf },
    /// Simple cycles and the condensation order between them.
    Cycles { input: PathBuf },
    /// The Ext-quiver E_Q.
    ExtQuiver {
        input: PathBuf,
        /// Emit the order relation as a JSON cover list instead.
        #[arg(long)]
        poset: bool,
    },
    /// Simple objects O_v of QGr, one per cyclic vertex.
    Simples { input: PathBuf },
    /// Decide QGr equivalence of two inputs; exit 1 when inequivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Γ(E_Q) in quiver text format.
    Canonical { input: PathBuf },
    /// Ordered K0 of QGr.
    K0 {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Test a vector of length p (cyclic vertices, in the reported order) for positivity.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        test_vector: Option<Vec<i64>>,
    },
    /// Positivity of a vertex-indexed vector in the direct limit. Exit 1 for
    /// nonmember, 4 when inconclusive.
    ConeTest {
        input: PathBuf,
        /// One entry per vertex, in declaration order.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        vector: Vec<i64>,
    },
    /// Stable Hom dimension between point modules or stored representations.
    Hom {
        input: PathBuf,
        /// Cyclic vertex of the source point module, or a representation file.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Split test for the extension N(ν) of O_v by O_w.
    ExtSplit {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// `ones`, `first`, or comma-separated rationals (padded with zeros).
        #[arg(long, default_value = "ones", allow_hyphen_values = true)]
        nu: String,
    },
    /// Identify the simple object a point module represents.
    PointClassify(PointArgs),
    /// Point-module tools.
    Point {
        #[command(subcommand)]
        command: PointCommand,
    },
    /// Monomial algebra tools.
    Monomial {
        #[command(subcommand)]
        command: MonomialCommand,
    },
    /// Bratteli vectors p_0..p_m and live endomorphism block sizes.
    Bratteli {
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        length: usize,
    },
    /// Noetherian test and the GK-dimension one report.
    Noetherian { input: PathBuf },
    /// Every invariant in one JSON document.
    Report { input: PathBuf },
}

#[derive(Subcommand)]
enum PointCommand {
    Classify(PointArgs),
}

#[derive(Subcommand)]
enum MonomialCommand {
    /// The Ufnarovskii graph of a monomial algebra.
    Graph { input: PathBuf },
}

#[derive(Args)]
struct PointArgs {
    /// A representation JSON file, or a quiver together with --start.
    input: PathBuf,
    /// Start vertex of a point module built along --prefix.
    #[arg(long)]
    start: Option<String>,
    /// Arrow ids traversed once before the module runs around a cycle.
    #[arg(long, value_delimiter = ',')]
    prefix: Vec<String>,
}

/// What a command produced: text for stdout and an exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

enum Failure {
    Usage(String),
    Lib(QgrError),
}

impl From<QgrError> for Failure {
    fn from(e: QgrError) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<Output, Failure>;

fn read_input(path: &FsPath) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn is_algebra(path: &FsPath, text: &str) -> bool {
    path.extension().is_some_and(|e| e == "alg")
        || text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .is_some_and(|l| l == "gens" || l.starts_with("gens "))
}

fn load_algebra(path: &FsPath) -> Result<MonomialPresentation, Failure> {
    let text = read_input(path)?;
    let a = parse_algebra(&text)?;
    for w in a.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(a)
}

/// Quiver files, quiver JSON, or monomial algebras through their Ufnarovskii graph.
fn load_quiver(path: &FsPath) -> Result<Quiver, Failure> {
    let text = read_input(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
    if is_algebra(path, &text) {
        let a = parse_algebra(&text)?;
        for w in a.warnings() {
            eprintln!("warning: {w}");
        }
        return Ok(ufnarovskii_graph(&a)?.with_name(stem));
    }
    let q = if text.trim_start().starts_with('{') {
        parse_quiver_json(&text)?
    } else {
        parse_quiver(&text)?
    };
    Ok(if q.name().is_empty() { q.with_name(stem) } else { q })
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn quiver_output(q: &Quiver, format: OutFormat) -> String {
    match format {
        OutFormat::Human => serialize(q, Format::Text),
        OutFormat::Json => serialize(q, Format::Json),
        OutFormat::Dot => serialize(q, Format::Dot),
    }
}

fn no_dot(opts: &Opts) -> Result<(), Failure> {
    if opts.format == OutFormat::Dot {
        Err(Failure::Usage("--format dot applies only to quiver-valued output".into()))
    } else {
        Ok(())
    }
}

fn verification_failed(what: &str) -> Failure {
    Failure::Lib(QgrError::AssertionFailure(format!("oracle disagrees: {what}")))
}

fn cmd_gk(input: &FsPath, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let report = gk_dimension(&q);
    if opts.verify {
        let brute = doubly_cyclic_oracle(&q)?;
        let names: Vec<String> = (0..q.vertex_count())
            .filter(|&v| brute[v])
            .map(|v| q.vertex_name(v).to_string())
            .collect();
        // The fast path reports whole components; the oracle only vertices on two cycles.
        if names.is_empty() != report.finite || !names.iter().all(|n| report.doubly_cyclic.contains(n)) {
            return Err(verification_failed("doubly cyclic vertices"));
        }
    }
    let text = if opts.format == OutFormat::Json {
        json_text(&serde_json::to_value(&report).expect("report serializes"))
    } else if let Some(d) = report.gk {
        let mut s = format!("GK-dimension {d}\n");
        for chain in &report.max_chain {
            s.push_str(&format!("chain: {}\n", chain.join(" < ")));
        }
        s
    } else {
        format!("GK-dimension infinite\ndoubly cyclic: {}\n", report.doubly_cyclic.join(" "))
    };
    let code = if report.finite { 0 } else { EXIT_INFINITE_GK };
    Ok(Output { text, code })
}

fn cmd_cycles(input: &FsPath, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let d = strongly_connected_cycles(&q);
    let names = |vs: &[usize]| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect::<Vec<_>>();
    let doubly = names(&d.doubly_cyclic);
    let cycles: Vec<Value> = d
        .cycles
        .iter()
        .map(|c| {
            json!({
                "base": q.vertex_name(c.base()),
                "length": c.len(),
                "vertices": names(&c.vertices),
                "arrows": c.arrows.iter().map(|&a| q.arrows()[a].id.clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let text = if opts.format == OutFormat::Json {
        json_text(&json!({ "cycles": cycles, "doubly_cyclic": doubly }))
    } else {
        let mut s = String::new();
        for c in &d.cycles {
            s.push_str(&format!("cycle {} (length {}): {}\n", q.vertex_name(c.base()), c.len(), names(&c.vertices).join(" -> ")));
        }
        if !doubly.is_empty() {
            s.push_str(&format!("doubly cyclic: {}\n", doubly.join(" ")));
        }
        s
    };
    let code = if d.finite() { 0 } else { EXIT_INFINITE_GK };
    Ok(Output { text, code })
}

fn cmd_ext_quiver(input: &FsPath, poset: bool, opts: &Opts) -> CmdResult {
    let q = load_quiver(input)?;
    let e = ext_quiver(&q)?;
    if poset {
        no_dot(opts)?;
        return Ok(Output::ok(json_text(&serde_json::to_value(e.poset_doc()).expect("poset serializes"))));
    }
    Ok(Output::ok(quiver_output(&e.to_quiver(&format!("E_{}", q.name())), opts.format)))
}

fn cmd_simples(input: &FsPath, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let cv = cyclic_vertices(&q)?;
    let text = if opts.format == OutFormat::Json {
        let items: Vec<Value> = cv
            .iter()
            .map(|&(v, n)| json!({ "vertex": q.vertex_name(v), "cycle_length": n }))
            .collect();
        json_text(&json!({ "count": cv.len(), "simples": items }))
    } else {
        let mut s = format!("{} simple objects\n", cv.len());
        for (v, n) in cv {
            s.push_str(&format!("O_{} (cycle length {n})\n", q.vertex_name(v)));
        }
        s
    };
    Ok(Output::ok(text))
}

fn cmd_equiv(first: &FsPath, second: &FsPath, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let (q1, q2) = (load_quiver(first)?, load_quiver(second)?);
    let (e1, e2) = (ext_quiver(&q1)?, ext_quiver(&q2)?);
    let verdict = compare_posets(&e1.poset, &e2.poset);
    if opts.verify && e1.len() <= ISO_CAP && e2.len() <= ISO_CAP {
        let brute = poset_iso_bruteforce(&e1.poset, &e2.poset)?;
        if brute.is_some() != verdict.is_equivalent() {
            return Err(verification_failed("poset isomorphism"));
        }
    }
    let text = if opts.format == OutFormat::Json {
        json_text(&serde_json::to_value(&verdict).expect("verdict serializes"))
    } else {
        match &verdict {
            Equivalence::Equivalent { bijection } => {
                let mut s = String::from("equivalent\n");
                for (a, b) in bijection {
                    s.push_str(&format!("{a} -> {b}\n"));
                }
                s
            }
            Equivalence::Inequivalent { reason } => format!("inequivalent: {reason}\n"),
        }
    };
    let code = if verdict.is_equivalent() { 0 } else { EXIT_FALSE };
    Ok(Output { text, code })
}

fn cmd_canonical(input: &FsPath, opts: &Opts) -> CmdResult {
    let q = load_quiver(input)?;
    let e = ext_quiver(&q)?;
    let g = gamma(&e.poset).with_name(format!("gamma_{}", q.name()));
    Ok(Output::ok(quiver_output(&g, opts.format)))
}

fn normalization_text(k: &OrderedK0) -> String {
    let norm = &k.normalization;
    format!(
        "normalization: L = {}, n = {}, order {}\nnormalized matrix:\n{}\nR:\n{}\nN:\n{}\n",
        norm.l,
        norm.n,
        norm.vertex_names.join(" "),
        norm.matrix,
        k.r,
        k.n
    )
}

fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}

fn cmd_k0(input: &FsPath, as_json: bool, test_vector: Option<&[i64]>, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let k = k0(&q)?;
    if opts.verify && n_closed_form(&k.normalization) != k.n {
        return Err(verification_failed("N by closed formula"));
    }
    let member = match test_vector {
        Some(v) if v.len() != k.rank => {
            return Err(Failure::Usage(format!("test vector has {} entries, rank is {}", v.len(), k.rank)))
        }
        Some(v) => Some(delta_contains(&k.poset, &big_vec(v))?),
        None => None,
    };
    let code = if member == Some(false) { EXIT_FALSE } else { 0 };
    let text = if as_json || opts.format == OutFormat::Json {
        let mut doc = k.to_json();
        if let Some(m) = member {
            doc["test_vector"] = json!({ "vector": test_vector, "member": m });
        }
        if opts.normalized {
            doc["normalized_matrix"] = matrix_json(&k.normalization.matrix);
        }
        json_text(&doc)
    } else {
        let cyclic: Vec<&str> = k.poset.names().iter().map(String::as_str).collect();
        let mut s = format!("K0 = Z^{} on cyclic vertices ({})\n", k.rank, cyclic.join(", "));
        let covers: Vec<String> = k
            .poset
            .cover_pairs()
            .iter()
            .map(|&(a, b)| format!("{} < {}", cyclic[a], cyclic[b]))
            .collect();
        s.push_str(&format!("order: {}\n", if covers.is_empty() { "discrete".into() } else { covers.join(", ") }));
        s.push_str(&format!("order unit: ({})\n", vec!["1"; k.rank].join(",")));
        s.push_str("positive cone: v >= 0 iff every minimal element of supp(v) has a positive coordinate\n");
        if let (Some(v), Some(m)) = (test_vector, member) {
            let shown: Vec<String> = v.iter().map(i64::to_string).collect();
            s.push_str(&format!("({}) {}\n", shown.join(","), if m { "is positive" } else { "is not positive" }));
        }
        if opts.normalized {
            s.push_str(&normalization_text(&k));
        }
        s
    };
    Ok(Output { text, code })
}

fn matrix_json(m: &qgr_core::IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(qgr_core::big_json).collect()))
            .collect(),
    )
}

fn cmd_cone_test(input: &FsPath, vector: &[i64], opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    if vector.len() != q.vertex_count() {
        return Err(Failure::Usage(format!(
            "vector has {} entries for {} vertices",
            vector.len(),
            q.vertex_count()
        )));
    }
    let k = k0(&q)?;
    let verdict = positive_cone_oracle(&k, &big_vec(vector), opts.cap_iterations as usize)?;
    let code = match verdict {
        ConeVerdict::Member => 0,
        ConeVerdict::Nonmember => EXIT_FALSE,
        ConeVerdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let name = serde_json::to_value(verdict).expect("verdict serializes");
    let text = if opts.format == OutFormat::Json {
        json_text(&json!({ "vector": vector, "verdict": name, "cap": opts.cap_iterations }))
    } else {
        format!("{}\n", name.as_str().unwrap_or_default())
    };
    Ok(Output { text, code })
}

fn vertex_arg(q: &Quiver, v: &str) -> Result<usize, Failure> {
    Ok(q.vertex(v)?)
}

/// A representation file when the argument names one, else the point module of a vertex.
fn rep_arg(q: &Quiver, arg: &str, cap: usize) -> Result<TruncatedGradedRep, Failure> {
    let path = FsPath::new(arg);
    if q.vertex(arg).is_err() && path.exists() {
        let rep = TruncatedGradedRep::from_json(&read_input(path)?)?;
        return Ok(rep);
    }
    Ok(cyclic_point_module(q, vertex_arg(q, arg)?, cap)?)
}

fn cmd_hom(input: &FsPath, from: &str, to: &str, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let cap = opts.cap_degree as usize;
    let (m, n) = (rep_arg(&q, from, cap)?, rep_arg(&q, to, cap)?);
    let h = qgr_hom_dim(&m, &n)?;
    let text = if opts.format == OutFormat::Json {
        json_text(&serde_json::to_value(&h).expect("hom serializes"))
    } else {
        let seq: Vec<String> = h.sequence.iter().map(usize::to_string).collect();
        format!(
            "dim Hom = {}{}\nby start degree: {}\n",
            h.dim,
            if h.stabilized { "" } else { " (not stabilized)" },
            seq.join(" ")
        )
    };
    let code = if h.stabilized { 0 } else { EXIT_INCONCLUSIVE };
    Ok(Output { text, code })
}

fn parse_nu(choice: &str, cap: usize) -> Result<Vec<Rat>, Failure> {
    let mut nu = match choice {
        "ones" => vec![rat(1); cap],
        "first" => {
            let mut v = vec![rat(0); cap];
            v[0] = rat(1);
            v
        }
        list => list
            .split(',')
            .map(|s| parse_rat(s.trim()).ok_or_else(|| Failure::Usage(format!("bad coefficient `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    nu.resize(cap.max(nu.len()), rat(0));
    Ok(nu)
}

fn cmd_ext_split(input: &FsPath, from: &str, to: &str, nu: &str, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let (v, w) = (vertex_arg(&q, from)?, vertex_arg(&q, to)?);
    let cap = opts.cap_degree as usize;
    let Some(setup) = normalize_for_extension(&q, v, w)? else {
        let text = if opts.format == OutFormat::Json {
            json_text(&json!({ "verdict": "no-arrow" }))
        } else {
            format!("no arrow {from} -> {to} in E_Q: every extension splits\n")
        };
        return Ok(Output::ok(text));
    };
    let e = build_extension(&setup.quiver, v, w, setup.r, &parse_nu(nu, cap)?, cap)?;
    let verdict = is_split_extension(&e)?;
    let code = if matches!(verdict, SplitVerdict::Inconclusive { .. }) { EXIT_INCONCLUSIVE } else { 0 };
    let text = if opts.format == OutFormat::Json {
        let mut doc = serde_json::to_value(&verdict).expect("verdict serializes");
        doc["veronese_degree"] = json!(setup.degree);
        if opts.normalized {
            doc["arrow"] = json!(setup.quiver.arrows()[setup.r].id);
        }
        json_text(&doc)
    } else {
        let mut s = match &verdict {
            SplitVerdict::Split { witness } => format!("split (section from degree {witness})\n"),
            SplitVerdict::Nonsplit { .. } => "nonsplit\n".to_string(),
            SplitVerdict::Inconclusive { end_dims } => format!("inconclusive (End dims {end_dims:?})\n"),
        };
        if opts.normalized {
            s.push_str(&format!(
                "Veronese degree {}, arrow {}\n",
                setup.degree,
                setup.quiver.arrows()[setup.r].id
            ));
        }
        s
    };
    Ok(Output { text, code })
}

fn cmd_point_classify(args: &PointArgs, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let text = read_input(&args.input)?;
    let rep = match &args.start {
        None => TruncatedGradedRep::from_json(&text)?,
        Some(start) => {
            let q = load_quiver(&args.input)?;
            let prefix = args
                .prefix
                .iter()
                .map(|a| q.arrow(a))
                .collect::<qgr_core::Result<Vec<_>>>()?;
            point_module_along(&q, vertex_arg(&q, start)?, &prefix, opts.cap_degree as usize)?
        }
    };
    let d = classify_point_module(&rep)?;
    let text = if opts.format == OutFormat::Json {
        json_text(&serde_json::to_value(&d).expect("descriptor serializes"))
    } else {
        format!(
            "isomorphic in QGr to O_{} (cycle {}, entered at degree {})\n",
            d.vertex,
            d.period.join(" -> "),
            d.entry_degree
        )
    };
    Ok(Output::ok(text))
}

fn cmd_monomial_graph(input: &FsPath, opts: &Opts) -> CmdResult {
    let a = load_algebra(input)?;
    let g = ufnarovskii_graph(&a)?;
    Ok(Output::ok(quiver_output(&g, opts.format)))
}

fn cmd_bratteli(input: &FsPath, length: usize, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let b = bratteli(&q, length);
    let endo = endo_block_dims(&q, length).ok();
    let text = if opts.format == OutFormat::Json {
        json_text(&json!({
            "bratteli": b.to_json(),
            "endo_blocks": endo.as_deref().map(endo_blocks_json),
        }))
    } else {
        let mut s = format!("vertices: {}\n", q.vertices().join(" "));
        for (m, p) in b.vectors.iter().enumerate() {
            let row: Vec<String> = p.iter().map(ToString::to_string).collect();
            s.push_str(&format!("p_{m} = ({})\n", row.join(", ")));
        }
        if let Some(blocks) = endo {
            let last = blocks.last().expect("degree 0 present");
            let sizes: Vec<String> = last.blocks.iter().map(|(v, d)| format!("{v}:{d}")).collect();
            s.push_str(&format!("End blocks at degree {}: {}\n", last.degree, sizes.join(" ")));
        }
        s
    };
    Ok(Output::ok(text))
}

fn cmd_noetherian(input: &FsPath, opts: &Opts) -> CmdResult {
    no_dot(opts)?;
    let q = load_quiver(input)?;
    let n = noetherian_check(&q);
    let g = gk1_report(&q);
    let text = if opts.format == OutFormat::Json {
        json_text(&json!({ "left": n.left, "right": n.right, "gk1": g }))
    } else {
        let mut s = format!("left Noetherian: {}\nright Noetherian: {}\n", n.left, n.right);
        if let Gk1Report::Semisimple { n, .. } = g {
            s.push_str(&format!("GK-dimension 1: QGr is equivalent to Mod k^{n}\n"));
        }
        s
    };
    Ok(Output::ok(text))
}

fn cmd_report(input: &FsPath) -> CmdResult {
    let q = load_quiver(input)?;
    let growth = gk_dimension(&q);
    let mut doc = json!({
        "quiver": serde_json::from_str::<Value>(&serialize(&q, Format::Json)).expect("quiver JSON"),
        "growth": growth,
    });
    if growth.finite {
        let e = ext_quiver(&q)?;
        doc["simples"] = json!(e.names);
        doc["ext_quiver"] = serde_json::to_value(e.poset_doc()).expect("poset serializes");
        doc["k0"] = k0(&q)?.to_json();
    }
    doc["matricial"] = matricial_report(&q, 12);
    doc["gk1"] = serde_json::to_value(gk1_report(&q)).expect("report serializes");
    let code = if growth.finite { 0 } else { EXIT_INFINITE_GK };
    Ok(Output { text: json_text(&doc), code })
}

fn run(cli: Cli) -> CmdResult {
    let opts = &cli.opts;
    match &cli.command {
        Command::Gk { input } => cmd_gk(input, opts),
        Command::Cycles { input } => cmd_cycles(input, opts),
        Command::ExtQuiver { input, poset } => cmd_ext_quiver(input, *poset, opts),
        Command::Simples { input } => cmd_simples(input, opts),
        Command::Equiv { first, second } => cmd_equiv(first, second, opts),
        Command::Canonical { input } => cmd_canonical(input, opts),
        Command::K0 { input, json, test_vector } => cmd_k0(input, *json, test_vector.as_deref(), opts),
        Command::ConeTest { input, vector } => cmd_cone_test(input, vector, opts),
        Command::Hom { input, from, to } => cmd_hom(input, from, to, opts),
        Command::ExtSplit { input, from, to, nu } => cmd_ext_split(input, from, to, nu, opts),
        Command::PointClassify(args) | Command::Point { command: PointCommand::Classify(args) } => {
            cmd_point_classify(args, opts)
        }
        Command::Monomial { command: MonomialCommand::Graph { input } } => cmd_monomial_graph(input, opts),
        Command::Bratteli { input, length } => cmd_bratteli(input, *length, opts),
        Command::Noetherian { input } => cmd_noetherian(input, opts),
        Command::Report { input } => cmd_report(input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("qgr: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("qgr: {e}");
            match e {
                QgrError::NotFiniteGk(_) => ExitCode::from(EXIT_INFINITE_GK),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
