use std::fmt::Write as _;
use std::process::ExitCode;

use artin_core::affine::realize;
use artin_core::delpezzo::{
    classify_two_component_structures, exceptional_vectors, limit_marking, limit_marking_check, roots,
    theta_torsor_check, weight,
};
use artin_core::garside::{parse_word, Garside};
use artin_core::graphs::{classify, parse_graph, CoxeterGraph, GraphAutomorphism};
use artin_core::presentations::{
    abelianization, artin_presentation, coset_enumerate, coxeter_quotient, extension_quotient,
    reduced_artin_presentation, sart_presentation, theorem_graph, theorem_presentation, Outcome, Presentation,
    DEFAULT_MAX_COSETS, THEOREMS,
};
use artin_core::tacnode::{run_trials, DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_TRUNCATION};
use artin_core::verify::{self, Suite};
use artin_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Coxeter graphs, reduced Artin groups, Del Pezzo lattices and tacnodal series.
#[derive(Parser, Debug)]
#[command(name = "artin", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coset table limit for enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include the slow checks (`verify`) or lift size limits.
    #[arg(long, global = true)]
    extended: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a Coxeter graph: a catalogue name like `E7~` or `graph { ... }`.
    Classify { graph: String },
    /// Print a presentation.
    Present(Source),
    /// Garside normal form of an Artin word.
    Garside {
        graph: String,
        word: String,
        /// Second word to compare with the first.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Todd-Coxeter enumeration of a presentation.
    Enumerate {
        #[command(flatten)]
        source: Source,
        /// Subgroup generators, comma separated words.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Abelian invariants of a presentation.
    Abelianize(Source),
    /// Alcove data, special vertices and the group S of an affine graph.
    Affine { graph: String },
    /// Del Pezzo lattice tables.
    Delpezzo {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = What::Roots)]
        what: What,
    },
    /// Random trials of the tacnodal class limit.
    Tacnode {
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        truncation: usize,
        /// Fix the order parameter instead of drawing it.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
    },
}

#[derive(Args, Debug)]
struct Source {
    /// Graph for `--kind` presentations and `D(...)` macros.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum, default_value_t = Kind::Reduced)]
    kind: Kind,
    /// Named theorem presentation.
    #[arg(long, conflicts_with = "input")]
    theorem: Option<String>,
    /// Presentation file, text or JSON.
    #[arg(long)]
    input: Option<String>,
    /// Add `t_i^2` for every generator named `t...`.
    #[arg(long)]
    squares: bool,
    /// Toric pairs for `--kind extension`, e.g. `0-7,0-6`.
    #[arg(long, default_value = "")]
    toric: String,
    /// Blown-up vertices for `--kind extension`, e.g. `0,7,2`.
    #[arg(long, default_value = "")]
    blowup: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Artin,
    Sart,
    Reduced,
    Extension,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum What {
    Roots,
    Exceptional,
    NodalClasses,
    Marking,
    Theta,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Fast,
    Extended,
    All,
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

fn emit(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("json"));
    out.push('\n');
}

fn perm_labels(g: &CoxeterGraph, a: &GraphAutomorphism) -> Vec<String> {
    a.perm.iter().map(|&j| g.label(j).to_string()).collect()
}

fn labels_of(g: &CoxeterGraph, list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| g.index_of(s).ok_or_else(|| Error::Invalid(format!("no vertex labelled `{s}`"))))
        .collect()
}

fn load(src: &Source) -> Result<(Presentation, Option<CoxeterGraph>)> {
    let graph = src.graph.as_deref().map(parse_graph).transpose()?;
    let p = if let Some(name) = &src.theorem {
        if !THEOREMS.contains(&name.as_str()) {
            return Err(Error::Invalid(format!("unknown theorem `{name}`; known: {}", THEOREMS.join(", "))));
        }
        let g = theorem_graph(name)?;
        let p = theorem_presentation(name)?;
        return Ok((squares(p, src.squares), Some(g)));
    } else if let Some(path) = &src.input {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        if text.trim_start().starts_with('{') {
            Presentation::from_json(&text)?
        } else {
            Presentation::from_text(&text, graph.as_ref())?
        }
    } else {
        let g = graph.as_ref().ok_or_else(|| Error::Invalid("one of --graph, --theorem, --input is required".into()))?;
        match src.kind {
            Kind::Artin => artin_presentation(g),
            Kind::Sart => sart_presentation(g)?,
            Kind::Reduced => reduced_artin_presentation(g)?,
            Kind::Extension => {
                let toric = src
                    .toric
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|pair| {
                        let (a, b) = pair
                            .split_once('-')
                            .ok_or_else(|| Error::Invalid(format!("toric pair `{pair}` is not `i-j`")))?;
                        let v = labels_of(g, &format!("{a},{b}"))?;
                        Ok((v[0].min(v[1]), v[0].max(v[1])))
                    })
                    .collect::<Result<Vec<_>>>()?;
                extension_quotient(g, &toric, &labels_of(g, &src.blowup)?)?
            }
        }
    };
    Ok((squares(p, src.squares), graph))
}

fn squares(p: Presentation, on: bool) -> Presentation {
    if on {
        coxeter_quotient(&p)
    } else {
        p
    }
}

fn run(cli: &Cli, out: &mut String) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Classify { graph } => {
            let g = parse_graph(graph)?;
            let t = classify(&g);
            if cli.json {
                emit(
                    out,
                    &json!({
                        "type": t.to_string(),
                        "kind": if t.is_finite() { "finite" } else if t.is_affine() { "affine" } else { "indefinite" },
                        "vertices": g.vertex_count(),
                        "labels": g.labels(),
                        "weyl_order": t.weyl_order().map(|o| o.to_string()),
                        "cartan": g.cartan_matrix().ok(),
                    }),
                );
            } else {
                writeln!(out, "{}, {} vertices", t.describe(), g.vertex_count()).unwrap();
            }
        }
        Command::Present(src) => {
            let (p, _) = load(src)?;
            if cli.json {
                emit(out, &p.to_json());
            } else {
                out.push_str(&p.to_text());
            }
        }
        Command::Garside { graph, word, compare } => {
            let g = parse_graph(graph)?;
            let gs = Garside::new(&g)?;
            let w = parse_word(&g, word)?;
            let nf = gs.normal_form(&w)?;
            let factors = nf
                .factors
                .iter()
                .map(|x| gs.lift(x).map(|a| a.display(&g)))
                .collect::<Result<Vec<_>>>()?;
            let equal = compare.as_ref().map(|c| gs.words_equal(&w, &parse_word(&g, c)?)).transpose()?;
            if cli.json {
                emit(out, &json!({ "delta_power": nf.delta_power, "factors": factors, "equal": equal }));
            } else {
                write!(out, "D^{}", nf.delta_power).unwrap();
                for f in &factors {
                    write!(out, " · [{f}]").unwrap();
                }
                out.push('\n');
                if let Some(e) = equal {
                    writeln!(out, "equal: {e}").unwrap();
                }
            }
        }
        Command::Enumerate { source, subgroup } => {
            let (p, g) = load(source)?;
            let subs = subgroup
                .as_deref()
                .unwrap_or("")
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| p.parse_word(s, g.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            let r = coset_enumerate(&p, &subs, cli.max_cosets);
            if cli.json {
                emit(out, &serde_json::to_value(&r).expect("json"));
            } else {
                match r.outcome {
                    Outcome::Finished { index } => writeln!(out, "index {index}").unwrap(),
                    Outcome::CosetLimitExceeded => writeln!(out, "coset limit {} exceeded", cli.max_cosets).unwrap(),
                }
                writeln!(out, "cosets defined {}, max active {}", r.cosets_defined, r.max_active).unwrap();
            }
            if r.order().is_none() {
                return Err(Failure::Domain(format!("coset limit {} exceeded", cli.max_cosets)));
            }
        }
        Command::Abelianize(src) => {
            let (p, _) = load(src)?;
            let ab = abelianization(&p);
            if cli.json {
                emit(out, &ab.to_json());
            } else {
                writeln!(out, "{ab}").unwrap();
            }
        }
        Command::Affine { graph } => affine(cli, graph, out)?,
        Command::Delpezzo { degree, what } => delpezzo(cli, *degree, *what, out)?,
        Command::Tacnode { trials, truncation, k } => {
            let r = run_trials(cli.seed, *trials, *truncation, *k)?;
            if cli.json {
                emit(out, &serde_json::to_value(&r).expect("json"));
            } else {
                writeln!(out, "{} trials at truncation {truncation}, {} failures", r.trials, r.failures).unwrap();
                for e in &r.examples {
                    writeln!(
                        out,
                        "  seed {} k={} branches {:?}: ratio(0) = {} (expected {})",
                        e.seed, e.k, e.branches, e.ratio_at_zero, e.expected
                    )
                    .unwrap();
                }
            }
            if r.failures > 0 {
                return Err(Failure::Domain(format!("{} trials failed", r.failures)));
            }
        }
        Command::Verify { suite } => {
            let suite = match (suite, cli.extended) {
                (Some(SuiteArg::Fast), _) | (None, false) => Suite::Fast,
                (Some(SuiteArg::Extended), _) => Suite::Extended,
                (Some(SuiteArg::All), _) | (None, true) => Suite::All,
            };
            let opts = verify::Options { max_cosets: cli.max_cosets, seed: cli.seed, ..Default::default() };
            let results = verify::run(suite, &opts);
            if cli.json {
                emit(out, &serde_json::to_value(&results).expect("json"));
            } else {
                for r in &results {
                    let tag = if r.pass { "PASS" } else { "FAIL" };
                    writeln!(out, "[{tag}] {:>2} {} ({} ms)", r.id, r.name, r.millis).unwrap();
                    writeln!(out, "        {}", r.detail).unwrap();
                }
            }
            if results.iter().any(|r| !r.pass) {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn affine(cli: &Cli, graph: &str, out: &mut String) -> Result<()> {
    let g = parse_graph(graph)?;
    let r = realize(&g)?;
    let s = r.special_structure()?;
    let lab = |v: &[usize]| v.iter().map(|&i| g.label(i).to_string()).collect::<Vec<_>>();
    let candidates = r.nonspecial_blowup_candidates()?;
    let checks = r.check_affine_identities();
    if cli.json {
        let vertices: Vec<Value> = (0..g.vertex_count())
            .map(|i| {
                json!({
                    "label": g.label(i),
                    "mark": r.marks[i],
                    "comark": r.comarks[i],
                    "alcove_vertex": r.alcove_vertices[i].iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        emit(
            out,
            &json!({
                "type": classify(&g).to_string(),
                "vertices": vertices,
                "q_index": r.q_index,
                "special": lab(&s.special),
                "minuscule_pairs": s.minuscule_pairs.iter().map(|&(i, j)| [g.label(i), g.label(j)]).collect::<Vec<_>>(),
                "g_i": s.g_i.iter().map(|(&i, a)| (g.label(i).to_string(), json!(perm_labels(&g, a)))).collect::<serde_json::Map<_, _>>(),
                "g_ij": s.g_ij.iter().map(|(&(i, j), a)| (format!("{},{}", g.label(i), g.label(j)), json!(perm_labels(&g, a)))).collect::<serde_json::Map<_, _>>(),
                "s_gamma_order": s.s_gamma.len(),
                "blowup_candidates": candidates.iter().map(|(j, a)| json!({"vertex": g.label(*j), "g": perm_labels(&g, a)})).collect::<Vec<_>>(),
                "identities": checks,
            }),
        );
        return Ok(());
    }
    writeln!(out, "{}, {} vertices, [P:Q] = {}", classify(&g).describe(), g.vertex_count(), r.q_index).unwrap();
    writeln!(out, "{:>6} {:>5} {:>7}  alcove vertex", "vertex", "mark", "comark").unwrap();
    for i in 0..g.vertex_count() {
        let a: Vec<String> = r.alcove_vertices[i].iter().map(|q| q.to_string()).collect();
        writeln!(out, "{:>6} {:>5} {:>7}  ({})", g.label(i), r.marks[i], r.comarks[i], a.join(", ")).unwrap();
    }
    writeln!(out, "special: {}", lab(&s.special).join(" ")).unwrap();
    for (&i, a) in &s.g_i {
        writeln!(out, "g_{} = {}", g.label(i), perm_labels(&g, a).join(" ")).unwrap();
    }
    for (&(i, j), a) in &s.g_ij {
        writeln!(out, "g_{},{} = {}", g.label(i), g.label(j), perm_labels(&g, a).join(" ")).unwrap();
    }
    writeln!(out, "|S| = {}", s.s_gamma.len()).unwrap();
    let c: Vec<&str> = candidates.iter().map(|(j, _)| g.label(*j)).collect();
    writeln!(out, "blowup candidates: {}", c.join(" ")).unwrap();
    let passed = checks.iter().filter(|c| c.pass).count();
    writeln!(out, "identities: {passed}/{} pass", checks.len()).unwrap();
    for c in checks.iter().filter(|c| !c.pass) {
        writeln!(out, "  FAIL {}", c.identity).unwrap();
    }
    Ok(())
}

fn delpezzo(cli: &Cli, degree: usize, what: What, out: &mut String) -> Result<()> {
    if !(1..=6).contains(&degree) {
        return Err(Error::Invalid(format!("degree {degree} outside 1..=6")));
    }
    let r = 9 - degree;
    if r == 8 && matches!(what, What::Roots | What::Exceptional) && !cli.extended {
        return Err(Error::Invalid("the rank 8 searches need --extended".into()));
    }
    let v = match what {
        What::Roots => {
            let rs = roots(r)?;
            json!({ "rank": r, "type": rs.diagram.to_string(), "count": rs.roots.len(), "roots": rs.roots })
        }
        What::Exceptional => {
            let e = exceptional_vectors(r)?;
            json!({ "rank": r, "count": e.len(), "vectors": e })
        }
        What::NodalClasses => {
            if !(2..=5).contains(&degree) {
                return Err(Error::Invalid("two-component structures are tabulated for degrees 2..=5".into()));
            }
            let orbits = classify_two_component_structures(degree)?;
            let rows: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "representative": [o.representative.0, o.representative.1],
                        "weight": weight(&o.representative.0),
                        "kernel": o.kernel.to_string(),
                        "orbit_size": o.orbit_size,
                    })
                })
                .collect();
            json!({ "degree": degree, "orbits": rows })
        }
        What::Marking => {
            if degree != 2 {
                return Err(Error::Invalid("the limit marking lives in degree 2".into()));
            }
            json!({ "curves": limit_marking(), "report": limit_marking_check()? })
        }
        What::Theta => {
            if degree != 2 {
                return Err(Error::Invalid("the theta torsor check lives in degree 2".into()));
            }
            serde_json::to_value(theta_torsor_check()?).expect("json")
        }
    };
    if cli.json {
        emit(out, &v);
        return Ok(());
    }
    match what {
        What::Roots => {
            writeln!(out, "r = {r}: {} roots, type {}", v["count"], v["type"].as_str().unwrap_or("")).unwrap();
            for x in roots(r)?.roots {
                writeln!(out, "  {x}").unwrap();
            }
        }
        What::Exceptional => {
            writeln!(out, "r = {r}: {} exceptional vectors", v["count"]).unwrap();
            for x in exceptional_vectors(r)? {
                writeln!(out, "  {x}").unwrap();
            }
        }
        What::NodalClasses => {
            for o in classify_two_component_structures(degree)? {
                writeln!(
                    out,
                    "({}, {})  weight {:?}  kernel {}  orbit {}",
                    o.representative.0,
                    o.representative.1,
                    weight(&o.representative.0),
                    o.kernel,
                    o.orbit_size
                )
                .unwrap();
            }
        }
        What::Marking => {
            let m = limit_marking_check()?;
            writeln!(
                out,
                "{} curves, {} pair checks, {} failures; sign is l-parity: {}; beta basis {}; pass: {}",
                m.symbols,
                m.checks,
                m.failures.len(),
                m.sign_is_l_parity,
                m.beta_type,
                m.pass()
            )
            .unwrap();
        }
        What::Theta => {
            let t = theta_torsor_check()?;
            writeln!(
                out,
                "torsor size {} (Smith) / {} (enumerated); {} classes hold exceptional vectors; pass: {}",
                t.torsor_size_smith,
                t.torsor_size_enumerated,
                t.exceptional_classes,
                t.pass()
            )
            .unwrap();
        }
    }
    Ok(())
}
