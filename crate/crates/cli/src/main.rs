use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use ecswitch::oracle::{brute_decide, DEFAULT_CLASS_CAP};
use ecswitch::{
    abelianize_graph, apply_sequence, check_witness, classify_target, hardness_witness,
    indicator_construction, smooth_and_periods, switch_equivalent, switch_to_monochromatic,
    EdgeColouredGraph, PermGroup, SwitchGraph, SwitchHomDecider, SwitchSequence, Verdict, Witness,
};

#[derive(Parser)]
#[command(
    name = "ecswitch",
    version,
    about = "Switchable homomorphisms of edge-coloured graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, transitivity, commutator subgroup and block system of a group.
    GroupInfo { group: PathBuf },
    /// The block-coloured graph, block table and quotient group.
    Abelianize { group: PathBuf, graph: PathBuf },
    /// Applies a switch sequence.
    Switch {
        group: PathBuf,
        graph: PathBuf,
        sequence: PathBuf,
    },
    /// Decides whether two graphs are switching equivalent.
    Equiv {
        group: PathBuf,
        graph_a: PathBuf,
        graph_b: PathBuf,
    },
    /// Decides whether a graph switches to monochromatic.
    Mono { group: PathBuf, graph: PathBuf },
    /// Materializes the switch graph (Abelian groups only).
    Switchgraph { group: PathBuf, graph: PathBuf },
    /// Decides whether some switching of G maps homomorphically to H.
    Decide {
        group: PathBuf,
        graph_g: PathBuf,
        graph_h: PathBuf,
        /// Write the witness here on a YES answer.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Answer by enumerating the switching class of G.
        #[arg(long)]
        oracle: bool,
        /// Class size limit for --oracle.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
    },
    /// Verifies a witness file.
    Check {
        group: PathBuf,
        graph_g: PathBuf,
        graph_h: PathBuf,
        witness: PathBuf,
    },
    /// Classifies a target as polynomial or NP-complete.
    Classify {
        group: PathBuf,
        graph_h: PathBuf,
        /// Write the verdict and its evidence here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// The (i, j) indicator digraph and its period report.
    Indicator { graph: PathBuf, i: usize, j: usize },
    /// Alternating cycles and coprime directed cycles for a nearly
    /// monochromatic target.
    Thm7 { group: PathBuf, graph_h: PathBuf },
}

struct Field {
    name: &'static str,
    json: Value,
    text: String,
}

struct Report {
    head: String,
    fields: Vec<Field>,
    prose: String,
    code: u8,
}

impl Report {
    fn new(head: impl Into<String>, code: u8) -> Self {
        Report {
            head: head.into(),
            fields: Vec::new(),
            prose: String::new(),
            code,
        }
    }

    fn field(mut self, name: &'static str, json: impl Serialize, text: impl Into<String>) -> Self {
        self.fields.push(Field {
            name,
            json: serde_json::to_value(json).expect("serializable"),
            text: text.into(),
        });
        self
    }

    fn prose(mut self, text: impl Into<String>) -> Self {
        self.prose = text.into();
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = format!("{}\n", self.head);
                for f in &self.fields {
                    if f.text.contains('\n') {
                        let _ = write!(out, "{}:\n{}", f.name, f.text);
                        if !f.text.ends_with('\n') {
                            out.push('\n');
                        }
                    } else {
                        let _ = writeln!(out, "{}: {}", f.name, f.text);
                    }
                }
                let _ = writeln!(out, "---\n{}", self.prose);
                out
            }
            Format::Json => {
                let mut obj = Map::new();
                let token = self.head.split_whitespace().next().unwrap_or("");
                obj.insert("result".into(), json!(token));
                obj.insert("headline".into(), json!(self.head));
                for f in &self.fields {
                    obj.insert(f.name.into(), f.json.clone());
                }
                obj.insert("summary".into(), json!(self.prose));
                let mut out = serde_json::to_string_pretty(&Value::Object(obj)).expect("json");
                out.push('\n');
                out
            }
        }
    }
}

type CliResult<T> = Result<T, String>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_group(path: &Path) -> CliResult<PermGroup> {
    PermGroup::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> CliResult<EdgeColouredGraph> {
    EdgeColouredGraph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn set(items: &[usize]) -> String {
    format!("{{{}}}", join(items, ", "))
}

fn sequence_text(seq: &SwitchSequence) -> String {
    if seq.is_empty() {
        "(none)".into()
    } else {
        seq.to_file_string()
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn group_info(path: &Path) -> CliResult<Report> {
    let g = load_group(path)?;
    let props = g.properties();
    let commutator = g.commutator_subgroup().map_err(err)?;
    let mut r = Report::new(
        format!("GROUP order={} degree={}", g.order(), g.degree()),
        0,
    )
    .field("degree", g.degree(), g.degree().to_string())
    .field("order", props.order, props.order.to_string())
    .field("generators", g.generators(), join(g.generators(), " "))
    .field(
        "transitive",
        props.is_transitive,
        yes_no(props.is_transitive),
    )
    .field("abelian", props.is_abelian, yes_no(props.is_abelian))
    .field("regular", props.is_regular, yes_no(props.is_regular))
    .field(
        "commutator_order",
        commutator.order(),
        commutator.order().to_string(),
    );
    let mut prose = format!(
        "A group of order {} acting on {} colours; it is {}transitive and {}Abelian. \
         Its commutator subgroup has order {}.",
        g.order(),
        g.degree(),
        if props.is_transitive { "" } else { "not " },
        if props.is_abelian { "" } else { "non-" },
        commutator.order()
    );
    if props.is_transitive {
        let ab = g.abelianization().map_err(err)?;
        let blocks = ab.blocks();
        let lines: String = (1..=blocks.count())
            .map(|l| format!("Δ{l} = {}\n", set(blocks.block(l))))
            .collect();
        r = r
            .field("block_count", blocks.count(), blocks.count().to_string())
            .field("blocks", blocks.blocks(), lines)
            .field(
                "quotient_order",
                ab.quotient().order(),
                ab.quotient().order().to_string(),
            )
            .field(
                "max_commutator_word",
                ab.words().max_len(),
                ab.words().max_len().to_string(),
            );
        let _ = write!(
            prose,
            " The commutator orbits give m′ = {} block(s); the quotient acts regularly on them \
             with order {}, and every commutator is a product of at most {} single commutators.",
            blocks.count(),
            ab.quotient().order(),
            ab.words().max_len()
        );
    } else {
        let orbits: String = g.orbits().iter().map(|o| format!("{}\n", set(o))).collect();
        r = r.field("orbits", g.orbits(), orbits);
        prose.push_str(" Without transitivity no block system is defined.");
    }
    Ok(r.prose(prose))
}

fn abelianize(group: &Path, graph: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(graph)?;
    let ab = g.abelianization().map_err(err)?;
    let ha = abelianize_graph(&h, ab.blocks()).map_err(err)?;
    let blocks = ab.blocks();
    let lines: String = (1..=blocks.count())
        .map(|l| format!("Δ{l} = {}\n", set(blocks.block(l))))
        .collect();
    let q = ab.quotient();
    Ok(
        Report::new(format!("ABELIANIZED blocks={}", blocks.count()), 0)
            .field("blocks", blocks.blocks(), lines)
            .field("quotient_order", q.order(), q.order().to_string())
            .field(
                "quotient_generators",
                q.generators(),
                join(q.generators(), " "),
            )
            .field("quotient_elements", q.elements(), join(q.elements(), " "))
            .field("graph", &ha, ha.to_file_string())
            .prose(format!(
            "Each colour was replaced by the label of its block under the commutator subgroup, \
             giving a graph on {} colour(s); the quotient group of order {} acts on the labels.",
            blocks.count(),
            q.order()
        )),
    )
}

fn check_members(g: &PermGroup, seq: &SwitchSequence) -> CliResult<()> {
    for s in seq.steps() {
        if !g.contains(&s.perm) {
            return Err(format!("permutation {} is not in the group", s.perm));
        }
    }
    Ok(())
}

fn switch(group: &Path, graph: &Path, sequence: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(graph)?;
    let seq = SwitchSequence::parse(&read(sequence)?, g.degree())
        .map_err(|e| format!("{}: {e}", sequence.display()))?;
    check_members(&g, &seq)?;
    let out = apply_sequence(&h, &seq).map_err(err)?;
    Ok(Report::new(format!("SWITCHED steps={}", seq.len()), 0)
        .field("graph", &out, out.to_file_string())
        .prose(format!("Applied {} switch(es) in order.", seq.len())))
}

fn equiv(group: &Path, a: &Path, b: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let ga = load_graph(a)?;
    let gb = load_graph(b)?;
    if !ga.same_underlying(&gb) {
        return Ok(Report::new("NO", 1)
            .field("sequence", Value::Null, "(none)")
            .prose("The graphs have different underlying graphs, so no switching relates them."));
    }
    Ok(match switch_equivalent(&ga, &gb, &g).map_err(err)? {
        Some(seq) => Report::new("YES", 0)
            .field("sequence", &seq, sequence_text(&seq))
            .prose(format!(
                "The first graph switches to the second; the {} switch(es) above do it.",
                seq.len()
            )),
        None => Report::new("NO", 1)
            .field("sequence", Value::Null, "(none)")
            .prose("No sequence of switches turns the first graph into the second."),
    })
}

fn mono(group: &Path, graph: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(graph)?;
    Ok(match switch_to_monochromatic(&h, &g).map_err(err)? {
        Some((colour, seq)) => Report::new(format!("YES colour={colour}"), 0)
            .field("colour", colour, colour.to_string())
            .field("sequence", &seq, sequence_text(&seq))
            .prose(format!(
                "The graph switches to monochromatic of colour {colour}."
            )),
        None => Report::new("NO", 1)
            .field("colour", Value::Null, "(none)")
            .prose("No switching makes the graph monochromatic."),
    })
}

fn switchgraph(group: &Path, graph: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(graph)?;
    let sw = SwitchGraph::build(&h, &g).map_err(err)?;
    let labels: Vec<Value> = (0..sw.graph().n())
        .map(|id| {
            let (v, e) = sw.label(id);
            json!({"id": id, "vertex": v, "element": g.element(e)})
        })
        .collect();
    Ok(Report::new(
        format!(
            "SWITCHGRAPH vertices={} edges={}",
            sw.graph().n(),
            sw.graph().edge_count()
        ),
        0,
    )
    .field(
        "labels",
        labels,
        format!("{} labelled vertices (see graph header)", sw.graph().n()),
    )
    .field("graph", sw.graph(), sw.to_file_string())
    .prose(
        "Vertex (v, π) has id v·|Γ| + index of π; an edge xy of colour i lifts to \
         (x, π)(y, φ) of colour π(φ(i)).",
    ))
}

fn decide(
    group: &Path,
    gp: &Path,
    hp: &Path,
    witness_out: Option<&Path>,
    oracle: bool,
    cap: usize,
) -> CliResult<Report> {
    let g = load_group(group)?;
    let gg = load_graph(gp)?;
    let h = load_graph(hp)?;
    let decider = SwitchHomDecider::new(&h, &g).map_err(err)?;
    let needs_witness = !oracle || witness_out.is_some();
    let witness = if needs_witness {
        decider.decide(&gg).map_err(err)?
    } else {
        None
    };
    let answer = if oracle {
        brute_decide(&gg, &h, &g, cap).map_err(err)?
    } else {
        witness.is_some()
    };
    if oracle && witness_out.is_some() && answer != witness.is_some() {
        return Err("oracle and structural decision disagree".into());
    }
    let method = if oracle { "oracle" } else { "structural" };
    let bound = ecswitch::hom::witness_length_bound(&gg, decider.abelianization());
    let mut r = Report::new(
        if answer { "YES" } else { "NO" },
        if answer { 0 } else { 1 },
    )
    .field("method", method, method);
    match (&witness, answer) {
        (Some(w), true) => {
            r = r
                .field(
                    "witness_length",
                    w.sequence.len(),
                    w.sequence.len().to_string(),
                )
                .field("length_bound", bound, bound.to_string())
                .field("witness", w, w.to_file_string());
            if let Some(path) = witness_out {
                write(path, &w.to_file_string())?;
            }
        }
        _ if answer => {}
        _ => r = r.field("witness", Value::Null, "(none)"),
    }
    let prose = if answer {
        "Some switching of G maps homomorphically to H.".to_string()
    } else {
        "No graph switching equivalent to G maps homomorphically to H.".to_string()
    };
    Ok(r.prose(if oracle {
        format!("{prose} Decided by enumerating the switching class of G.")
    } else {
        prose
    }))
}

fn check(group: &Path, gp: &Path, hp: &Path, wp: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let gg = load_graph(gp)?;
    let h = load_graph(hp)?;
    let w = Witness::parse(&read(wp)?, g.degree()).map_err(|e| format!("{}: {e}", wp.display()))?;
    let ok = check_witness(&gg, &h, &g, &w);
    Ok(
        Report::new(if ok { "YES" } else { "NO" }, if ok { 0 } else { 1 })
            .field("valid", ok, yes_no(ok))
            .field(
                "witness_length",
                w.sequence.len(),
                w.sequence.len().to_string(),
            )
            .prose(if ok {
                "Every switch uses a group element and the mapping is a colour-preserving \
             homomorphism from the switched graph."
            } else {
                "The witness does not verify."
            }),
    )
}

fn verdict_prose(v: &Verdict) -> String {
    use ecswitch::{Certificate, PolynomialReason};
    match v {
        Verdict::Polynomial(PolynomialReason::Edgeless) => {
            "The target has no edges, so only edgeless inputs map to it.".into()
        }
        Verdict::Polynomial(PolynomialReason::MonoBipartite { colour, .. }) => format!(
            "The target is bipartite and its block-coloured graph switches to monochromatic \
             of block Δ{colour}; the problem reduces to a bipartiteness test plus tree switching."
        ),
        Verdict::NpComplete(Certificate::OddCycle { cycle }) => format!(
            "The target contains the odd cycle {}; the problem is NP-complete.",
            join(cycle, " ")
        ),
        Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
            cycle,
            colours: (k, l),
            ..
        }) => {
            format!(
                "The target is bipartite but cannot be switched to monochromatic: after switching, \
                 the cycle {} has every edge in block Δ{k} except its closing edge in Δ{l}. \
                 The problem is NP-complete.",
                join(cycle, " ")
            )
        }
    }
}

fn classify(group: &Path, hp: &Path, certificate: Option<&Path>) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(hp)?;
    let v = classify_target(&h, &g).map_err(err)?;
    if let Some(path) = certificate {
        write(path, &v.to_file_string())?;
    }
    let code = if v.is_polynomial() { 0 } else { 1 };
    Ok(Report::new(v.headline(), code)
        .field("verdict", &v, v.to_file_string())
        .prose(verdict_prose(&v)))
}

fn period_lines(report: &ecswitch::PeriodReport) -> String {
    if report.components.is_empty() {
        return "(none)".into();
    }
    report
        .components
        .iter()
        .map(|c| format!("{} period {}\n", set(&c.vertices), c.period))
        .collect()
}

fn indicator(graph: &Path, i: usize, j: usize) -> CliResult<Report> {
    let s = load_graph(graph)?;
    let d = indicator_construction(&s, i, j).map_err(err)?;
    let p = smooth_and_periods(&d);
    Ok(Report::new(
        format!("DIGRAPH vertices={} arcs={}", d.n(), d.arc_count()),
        0,
    )
    .field("smooth", p.is_smooth, yes_no(p.is_smooth))
    .field(
        "coprime_cycles",
        p.has_coprime_cycles,
        yes_no(p.has_coprime_cycles),
    )
    .field(
        "loops",
        &p.loops,
        if p.loops.is_empty() {
            "(none)".into()
        } else {
            join(&p.loops, " ")
        },
    )
    .field("components", &p.components, period_lines(&p))
    .field("digraph", d.arcs().collect::<Vec<_>>(), d.to_file_string())
    .prose(format!(
        "Arc x→y whenever x–z has colour {i} and z–y has colour {j}. The digraph is {}smooth \
             and {} a strongly connected component of period 1.",
        if p.is_smooth { "" } else { "not " },
        if p.has_coprime_cycles {
            "has"
        } else {
            "has no"
        }
    )))
}

fn labels_text(labels: &[(usize, ecswitch::Permutation)]) -> String {
    labels
        .iter()
        .map(|(v, p)| format!("({v}, {p})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn thm7(group: &Path, hp: &Path) -> CliResult<Report> {
    let g = load_group(group)?;
    let h = load_graph(hp)?;
    let Some(w) = hardness_witness(&h, &g).map_err(err)? else {
        let v = classify_target(&h, &g).map_err(err)?;
        return Ok(Report::new(format!("NOT-APPLICABLE {}", v.headline()), 1).prose(
            "The construction needs a bipartite target that cannot be switched to monochromatic.",
        ));
    };
    let c = &w.cycles;
    let loop_free = w.periods.loops.is_empty();
    Ok(
        Report::new(format!("CYCLES c1={} c2={}", c.c1.len(), c.c2.len()), 0)
            .field("colours", [c.i, c.j], format!("{} {}", c.i, c.j))
            .field("pi", &w.pi, w.pi.to_string())
            .field("d", c.d, c.d.to_string())
            .field("k", c.k, c.k.to_string())
            .field("cycle", &w.cycle, join(&w.cycle, " "))
            .field("c1", &w.c1_labels, labels_text(&w.c1_labels))
            .field("c2", &w.c2_labels, labels_text(&w.c2_labels))
            .field(
                "directed_lengths",
                [w.directed_lengths.0, w.directed_lengths.1],
                format!("{} {}", w.directed_lengths.0, w.directed_lengths.1),
            )
            .field(
                "same_component",
                w.directed_cycles_ok,
                yes_no(w.directed_cycles_ok),
            )
            .field("smooth", w.periods.is_smooth, yes_no(w.periods.is_smooth))
            .field("loop_free", loop_free, yes_no(loop_free))
            .field(
                "coprime_cycles",
                w.periods.has_coprime_cycles,
                yes_no(w.periods.has_coprime_cycles),
            )
            .field(
                "components",
                &w.periods.components,
                period_lines(&w.periods),
            )
            .prose(format!(
            "With π = {} of order {}, the switch graph contains alternating cycles of lengths {} \
             and {}; their even positions give directed cycles of lengths {} and {} in the \
             ({}, {}) indicator digraph.",
            w.pi,
            c.d,
            c.c1.len(),
            c.c2.len(),
            w.directed_lengths.0,
            w.directed_lengths.1,
            c.i,
            c.j
        )),
    )
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::GroupInfo { group } => group_info(group),
        Command::Abelianize { group, graph } => abelianize(group, graph),
        Command::Switch {
            group,
            graph,
            sequence,
        } => switch(group, graph, sequence),
        Command::Equiv {
            group,
            graph_a,
            graph_b,
        } => equiv(group, graph_a, graph_b),
        Command::Mono { group, graph } => mono(group, graph),
        Command::Switchgraph { group, graph } => switchgraph(group, graph),
        Command::Decide {
            group,
            graph_g,
            graph_h,
            witness,
            oracle,
            cap,
        } => decide(group, graph_g, graph_h, witness.as_deref(), *oracle, *cap),
        Command::Check {
            group,
            graph_g,
            graph_h,
            witness,
        } => check(group, graph_g, graph_h, witness),
        Command::Classify {
            group,
            graph_h,
            certificate,
        } => classify(group, graph_h, certificate.as_deref()),
        Command::Indicator { graph, i, j } => indicator(graph, *i, *j),
        Command::Thm7 { group, graph_h } => thm7(group, graph_h),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(report.code)
        }
        Err(msg) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
