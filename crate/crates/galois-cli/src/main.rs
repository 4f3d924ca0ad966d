//! `galois`: parse the shared text format, run one library operation, and
//! emit a canonical key-sorted JSON report on stdout (human summary on
//! stderr). Exit codes: 0 success, 1 invariant/assertion failure or budget
//! refusal, 2 parse error.

mod report;
mod workspace;

use clap::{Parser, Subcommand};
use galois_core::budget::Budget;
use galois_core::fpgroup::Word;
use galois_core::group::FiniteGroup;
use galois_core::{cover, fpgroup, group, gset, orbifold, simplicial};
use report::Report;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use workspace::{CliError, Workspace};

#[derive(Parser)]
#[command(name = "galois")]
#[command(about = "Finite Galois covering theory: groups, covers, orbifolds, nerves")]
struct Cli {
    /// Input files in the shared text format (repeatable).
    #[arg(short, long, global = true)]
    input: Vec<PathBuf>,

    /// Degree cap for exhaustive cover/action sweeps.
    #[arg(long, global = true, default_value_t = 3)]
    degree_cap: usize,

    /// Degree up to which action spectra are compared.
    #[arg(long, global = true, default_value_t = 4)]
    spectrum_degree: usize,

    /// Largest group order admitted to subgroup-lattice searches.
    #[arg(long, global = true, default_value_t = 24)]
    group_order_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Groupoid-level operations.
    #[command(subcommand)]
    Core(CoreCmd),
    /// Finite group action operations.
    #[command(subcommand)]
    Gset(GsetCmd),
    /// Finitely presented group operations.
    #[command(subcommand)]
    Fp(FpCmd),
    /// Graph covering operations.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Group-action-on-graph operations.
    #[command(subcommand)]
    Orbifold(OrbifoldCmd),
    /// Truncated simplicial operations.
    #[command(subcommand)]
    Simplicial(SimplicialCmd),
}

#[derive(Subcommand)]
enum CoreCmd {
    /// Parse and validate every entity in the input files.
    Validate,
    /// All normal subgroups with quotients and projections.
    Quotients {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum GsetCmd {
    /// Orbit partition of a G-set.
    Orbits {
        #[arg(long)]
        gset: String,
    },
    /// The literal Galois test.
    Galois {
        #[arg(long)]
        gset: String,
    },
    /// Fiber of an equivariant map over a point, as a stabilizer action.
    Slice {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
    },
    /// The exact-sequence certificate of a Galois object.
    ExactSeq {
        #[arg(long)]
        gset: String,
        #[arg(long)]
        point: String,
    },
    /// Automorphism count of a restricted regular action, both routes.
    AutCard {
        #[arg(long)]
        morphism: String,
    },
}

#[derive(Subcommand)]
enum FpCmd {
    /// Enumerate all actions of a presentation on {1..degree}.
    Actions {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        degree: usize,
    },
    /// Per-degree action counts.
    Spectrum {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        degree: usize,
    },
    /// Free rank and torsion of the abelianization.
    Abel {
        #[arg(long)]
        presentation: String,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Free presentation of the fundamental group of a graph.
    Pi1 {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Monodromy action of a cover on its fiber.
    Monodromy {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Build the cover with a prescribed monodromy action.
    Build {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        base: String,
        #[arg(long)]
        faction: String,
    },
    /// Deck transformation group and the Galois verdict.
    Deck {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// The trivialization quotient of a connected cover.
    Trivquot {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Finite truncations of the fundamental pro-group tower.
    Prosystem {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        base: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum OrbifoldCmd {
    /// Present the orbifold fundamental group of a graph action.
    Pi1 {
        #[arg(long)]
        action: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Build and certify the canonical Galois object.
    Canonical {
        #[arg(long)]
        action: String,
    },
    /// The exact-sequence evidence report (E1/E2/E3).
    ExactSeq {
        #[arg(long)]
        action: String,
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Equivariant covers of a given degree up to equivariant isomorphism.
    Enumerate {
        #[arg(long)]
        action: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "")]
        base: String,
    },
}

#[derive(Subcommand)]
enum SimplicialCmd {
    /// Čech nerve of a cover, with the hypercovering verdict.
    Nerve {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
    /// Edge-path fundamental group of a truncated simplicial set.
    Pi1 {
        #[arg(long)]
        simplicial: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Coskeleton of a truncated simplicial set.
    Cosk {
        #[arg(long)]
        simplicial: String,
        #[arg(long)]
        m: usize,
    },
    /// Hypercovering test for the Čech nerve of a cover.
    Hypercheck {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
    /// The fundamental-group comparison across the Čech nerve.
    Prop53 {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value = "")]
        base: String,
    },
}

fn main() -> ExitCode {
    let mut argv: Vec<String> = std::env::args().collect();
    if !argv.is_empty() {
        argv[0] = "galois".into();
    }
    let cli = Cli::parse();
    match run(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli, argv: &[String]) -> Result<ExitCode, CliError> {
    let mut rep = Report::new(argv);
    let mut files = Vec::new();
    for path in &cli.input {
        let bytes = std::fs::read(path).map_err(|e| CliError::Parse {
            location: path.display().to_string(),
            message: e.to_string(),
        })?;
        rep.add_input_digest(path, &bytes);
        let text = String::from_utf8(bytes).map_err(|_| CliError::Parse {
            location: path.display().to_string(),
            message: "input is not UTF-8".into(),
        })?;
        files.push((path.display().to_string(), text));
    }
    let ws = Workspace::parse(&files)?;
    let budget = Budget {
        max_generators: 16,
        max_group_order: cli.group_order_cap,
        ..Budget::from_env()
    };

    let (result, summary, ok) = dispatch(cli, &ws, &budget)?;
    rep.result = result;
    if !ok {
        rep.notes.push("assertion failed; exit code 1".into());
    }
    rep.emit(&summary);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn base_vertex(g: &cover::Graph, name: &str) -> Result<usize, CliError> {
    if name.is_empty() {
        return Ok(0);
    }
    g.vertex_names()
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| CliError::Parse {
            location: "<arguments>".into(),
            message: format!("no vertex named '{name}'"),
        })
}

fn gset_point(y: &gset::GSet, name: &str) -> Result<usize, CliError> {
    y.point_names()
        .iter()
        .position(|p| p == name)
        .ok_or_else(|| CliError::Parse {
            location: "<arguments>".into(),
            message: format!("no point named '{name}'"),
        })
}

fn names_of(g: &FiniteGroup, indices: &[usize]) -> Value {
    Value::Array(
        indices
            .iter()
            .map(|&i| Value::String(g.name_of(i).to_string()))
            .collect(),
    )
}

fn count_u128(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn word_strings(gens: &[String], words: &[Word]) -> Value {
    Value::Array(
        words
            .iter()
            .map(|w| Value::String(w.display(gens)))
            .collect(),
    )
}

fn spectrum_json(s: &fpgroup::Spectrum) -> Value {
    Value::Array(
        s.per_degree
            .iter()
            .map(|&(a, t)| json!({ "all": a, "transitive": t }))
            .collect(),
    )
}

fn abel_json(a: &(usize, Vec<u64>)) -> Value {
    json!({ "rank": a.0, "torsion": a.1 })
}

fn dispatch(cli: &Cli, ws: &Workspace, budget: &Budget) -> Result<(Value, String, bool), CliError> {
    match &cli.command {
        Command::Core(cmd) => core_cmd(cmd, ws, budget),
        Command::Gset(cmd) => gset_cmd(cmd, ws),
        Command::Fp(cmd) => fp_cmd(cmd, ws, budget),
        Command::Cover(cmd) => cover_cmd(cmd, ws, budget),
        Command::Orbifold(cmd) => orbifold_cmd(cmd, cli, ws, budget),
        Command::Simplicial(cmd) => simplicial_cmd(cmd, cli, ws, budget),
    }
}

fn core_cmd(cmd: &CoreCmd, ws: &Workspace, budget: &Budget) -> Result<(Value, String, bool), CliError> {
    match cmd {
        CoreCmd::Validate => {
            let result = json!({
                "groups": ws.groups.keys().collect::<Vec<_>>(),
                "morphisms": ws.morphisms.keys().collect::<Vec<_>>(),
                "gsets": ws.gsets.keys().collect::<Vec<_>>(),
                "eqmaps": ws.eqmaps.keys().collect::<Vec<_>>(),
                "graphs": ws.graphs.keys().collect::<Vec<_>>(),
                "covers": ws.covers.keys().collect::<Vec<_>>(),
                "actions": ws.actions.keys().collect::<Vec<_>>(),
                "presentations": ws.presentations.keys().collect::<Vec<_>>(),
                "factions": ws.factions.keys().collect::<Vec<_>>(),
                "simplicials": ws.simplicials.keys().collect::<Vec<_>>(),
                "valid": true,
            });
            let total = ws.groups.len()
                + ws.morphisms.len()
                + ws.gsets.len()
                + ws.eqmaps.len()
                + ws.graphs.len()
                + ws.covers.len()
                + ws.actions.len()
                + ws.presentations.len()
                + ws.factions.len()
                + ws.simplicials.len();
            Ok((result, format!("workspace valid: {total} entities"), true))
        }
        CoreCmd::Quotients { group } => {
            let g = ws.group(group)?;
            let quots = group::finite_quotients(&g, budget)?;
            let items: Vec<Value> = quots
                .iter()
                .map(|q| {
                    json!({
                        "kernel": names_of(&g, &q.kernel.elements),
                        "kernel_order": q.kernel.order(),
                        "quotient_order": q.quotient.order(),
                        "quotient_elements": q.quotient.element_names(),
                        "projection": q.projection,
                    })
                })
                .collect();
            let summary = format!("{} normal subgroups of {}", items.len(), group);
            Ok((json!({ "quotients": items }), summary, true))
        }
    }
}

fn gset_cmd(cmd: &GsetCmd, ws: &Workspace) -> Result<(Value, String, bool), CliError> {
    match cmd {
        GsetCmd::Orbits { gset } => {
            let y = ws.gset(gset)?;
            let blocks: Vec<Vec<String>> = gset::orbits(&y)
                .iter()
                .map(|b| b.iter().map(|&x| y.point_names()[x].clone()).collect())
                .collect();
            let connected = blocks.len() == 1;
            let summary = format!("{} orbits", blocks.len());
            Ok((json!({ "orbits": blocks, "connected": connected }), summary, true))
        }
        GsetCmd::Galois { gset } => {
            let y = ws.gset(gset)?;
            let connected = gset::is_connected(&y);
            let aut = gset::aut_group(&y);
            let galois = gset::is_galois(&y);
            let result = json!({
                "connected": connected,
                "aut_order": aut.group.order(),
                "size": y.size(),
                "galois": galois,
            });
            Ok((result, format!("galois: {galois}"), true))
        }
        GsetCmd::Slice { map, point } => {
            let p = ws.eqmap(map)?;
            let a = gset_point(&p.target, point)?;
            let fib = gset::slice_to_hset(&p, a).map_err(|e| CliError::Invariant {
                message: e.to_string(),
            })?;
            let result = json!({
                "stabilizer": names_of(&p.target.group, &fib.stab.elements),
                "stabilizer_order": fib.stab.order(),
                "fiber": fib.fiber.point_names(),
                "fiber_size": fib.fiber.size(),
            });
            let summary = format!("fiber of size {} over {point}", fib.fiber.size());
            Ok((result, summary, true))
        }
        GsetCmd::ExactSeq { gset, point } => {
            let y = ws.gset(gset)?;
            let a = gset_point(&y, point)?;
            let seq = gset::galois_exact_sequence(&y, a).map_err(|e| CliError::Invariant {
                message: e.to_string(),
            })?;
            let phi: Vec<String> = seq
                .phi
                .iter()
                .map(|&i| seq.aut.perms[i].cycle_notation())
                .collect();
            let result = json!({
                "stabilizer": names_of(&y.group, &seq.stabilizer.elements),
                "stabilizer_order": seq.stabilizer.order(),
                "aut_order": seq.aut.group.order(),
                "phi": phi,
                "homomorphism": seq.homomorphism_ok,
                "surjective": seq.surjective,
                "kernel_is_stabilizer": seq.kernel_is_stabilizer,
                "stabilizer_normal": seq.stabilizer_normal,
                "order_product": seq.order_product_ok,
            });
            let ok = seq.all_ok();
            Ok((result, format!("exact sequence certificate: {ok}"), ok))
        }
        GsetCmd::AutCard { morphism } => {
            let f = ws.morphism(morphism)?;
            let r = gset::restriction_aut_card(&f);
            let result = json!({
                "brute_count": count_u128(r.brute_count),
                "formula": count_u128(r.formula),
                "formula_matches": r.formula_matches,
                "translations_bijective": r.translations_bijective,
                "fixed_point_probe": r.fixed_point_probe_ok,
                "onto_verdict": r.onto_verdict,
                "surjective": r.actually_surjective,
            });
            let ok = r.formula_matches && r.onto_verdict == r.actually_surjective;
            Ok((result, format!("count {} = formula {}", r.brute_count, r.formula), ok))
        }
    }
}

fn fp_cmd(cmd: &FpCmd, ws: &Workspace, budget: &Budget) -> Result<(Value, String, bool), CliError> {
    match cmd {
        FpCmd::Actions { presentation, degree } => {
            let p = ws.presentation(presentation)?;
            let actions = fpgroup::enumerate_actions(&p, *degree, budget)?;
            let items: Vec<Value> = actions
                .iter()
                .map(|(a, t)| {
                    let images: Vec<String> =
                        a.images.iter().map(|q| q.cycle_notation()).collect();
                    json!({ "images": images, "transitive": t })
                })
                .collect();
            let transitive = actions.iter().filter(|(_, t)| *t).count();
            let summary = format!("{} actions, {} transitive", actions.len(), transitive);
            Ok((
                json!({ "count": actions.len(), "transitive": transitive, "actions": items }),
                summary,
                true,
            ))
        }
        FpCmd::Spectrum { presentation, degree } => {
            let p = ws.presentation(presentation)?;
            let s = fpgroup::quotient_spectrum(&p, *degree, budget)?;
            let summary = format!("spectrum to degree {degree}");
            Ok((json!({ "spectrum": spectrum_json(&s) }), summary, true))
        }
        FpCmd::Abel { presentation } => {
            let p = ws.presentation(presentation)?;
            let a = fpgroup::abelianization(&p);
            let summary = format!("rank {}, torsion {:?}", a.0, a.1);
            Ok((abel_json(&a), summary, true))
        }
    }
}

fn cover_cmd(cmd: &CoverCmd, ws: &Workspace, budget: &Budget) -> Result<(Value, String, bool), CliError> {
    let to_inv = |e: cover::CoverError| -> CliError {
        match e {
            cover::CoverError::Budget(b) => CliError::Budget {
                message: b.to_string(),
            },
            other => CliError::Invariant {
                message: other.to_string(),
            },
        }
    };
    match cmd {
        CoverCmd::Pi1 { graph, base } => {
            let g = ws.graph(graph)?;
            let b = base_vertex(&g, base)?;
            let (pres, tree, connected) = cover::pi1_graph(&g, b).map_err(to_inv)?;
            let result = json!({
                "rank": pres.rank(),
                "generators": pres.generators,
                "generator_edges": tree.generators,
                "connected": connected,
            });
            let mut summary = format!("free of rank {}", pres.rank());
            if !connected {
                summary.push_str(" (warning: graph disconnected; base component used)");
            }
            Ok((result, summary, true))
        }
        CoverCmd::Monodromy { cover: cname, base } => {
            let c = ws.cover(cname)?;
            let b = base_vertex(&c.base, base)?;
            let (action, fiber) = cover::monodromy(&c, b).map_err(to_inv)?;
            let images: Vec<String> = action.images.iter().map(|p| p.cycle_notation()).collect();
            let fiber_names: Vec<String> = fiber
                .iter()
                .map(|&v| c.total.vertex_names()[v].clone())
                .collect();
            let result = json!({
                "degree": action.degree,
                "fiber": fiber_names,
                "images": images,
            });
            Ok((result, format!("degree {} monodromy", action.degree), true))
        }
        CoverCmd::Build { graph, base, faction } => {
            let g = ws.graph(graph)?;
            let b = base_vertex(&g, base)?;
            let (_, action) = ws.faction(faction)?;
            let c = cover::cover_from_action(&g, b, &action).map_err(to_inv)?;
            let (back, _) = cover::monodromy(&c, b).map_err(to_inv)?;
            let edges: Vec<Vec<String>> = c
                .total
                .edge_pairs()
                .iter()
                .map(|&(d, e)| {
                    vec![
                        c.total.vertex_names()[c.total.vertex_of(d)].clone(),
                        c.total.vertex_names()[c.total.vertex_of(e)].clone(),
                    ]
                })
                .collect();
            let result = json!({
                "total_vertices": c.total.vertex_names(),
                "total_edges": edges,
                "degree": action.degree,
                "monodromy_round_trip": back == action,
            });
            Ok((result, format!("built a degree-{} cover", action.degree), back == action))
        }
        CoverCmd::Deck { cover: cname, base } => {
            let c = ws.cover(cname)?;
            let b = base_vertex(&c.base, base)?;
            let deck = cover::deck_group(&c, b).map_err(to_inv)?;
            let result = json!({
                "order": deck.group.order(),
                "galois": deck.is_galois,
                "elements": deck.group.element_names(),
            });
            Ok((result, format!("deck group of order {}", deck.group.order()), true))
        }
        CoverCmd::Trivquot { cover: cname, base } => {
            let c = ws.cover(cname)?;
            let b = base_vertex(&c.base, base)?;
            let (pres, _, _) = cover::pi1_graph(&c.base, b).map_err(to_inv)?;
            let q = cover::trivialization_quotient(&c, b, budget).map_err(to_inv)?;
            let result = json!({
                "group_order": q.group.order(),
                "group_elements": q.group.element_names(),
                "projection": q.projection,
                "image_order": q.image.order(),
                "image_elements": q.image.element_names(),
                "image_witness_words": word_strings(&pres.generators, &q.image_words),
            });
            Ok((result, format!("G_R of order {}", q.group.order()), true))
        }
        CoverCmd::Prosystem { graph, base, depth } => {
            let g = ws.graph(graph)?;
            let b = base_vertex(&g, base)?;
            let sys = cover::pi1_inverse_system(&g, b, *depth, budget).map_err(to_inv)?;
            let valid = galois_core::groupoid::validate_chain(&sys.chain).is_ok();
            let orders: Vec<usize> = sys.level_groups.iter().map(|x| x.order()).collect();
            let result = json!({
                "level_orders": orders,
                "generator_images": sys.generator_images,
                "chain_valid": valid,
            });
            Ok((result, format!("tower orders {orders:?}"), valid))
        }
    }
}

fn orbifold_cmd(
    cmd: &OrbifoldCmd,
    cli: &Cli,
    ws: &Workspace,
    budget: &Budget,
) -> Result<(Value, String, bool), CliError> {
    let to_err = |e: orbifold::OrbifoldError| -> CliError {
        match e {
            orbifold::OrbifoldError::Budget(b) => CliError::Budget {
                message: b.to_string(),
            },
            orbifold::OrbifoldError::Cover(cover::CoverError::Budget(b)) => CliError::Budget {
                message: b.to_string(),
            },
            other => CliError::Invariant {
                message: other.to_string(),
            },
        }
    };
    match cmd {
        OrbifoldCmd::Pi1 { action, base } => {
            let a = ws.action(action)?;
            let b = base_vertex(&a.space, base)?;
            let data = orbifold::orbifold_pi1(&a, b).map_err(to_err)?;
            let gens = &data.presentation.generators;
            let labels: Vec<String> = data
                .generator_labels
                .iter()
                .map(|&l| a.group.name_of(l).to_string())
                .collect();
            let result = json!({
                "generators": gens,
                "labels": labels,
                "relators": word_strings(gens, &data.presentation.relators),
                "pi1x_rank": data.pi1x_presentation.rank(),
                "pi1x_images": word_strings(gens, &data.pi1x_images),
                "abelianization": abel_json(&fpgroup::abelianization(&data.presentation)),
                "relators_die": data.relators_die(&a.group),
                "images_die": data.images_die(&a.group),
            });
            let summary = format!("{} generators, {} relators", gens.len(), data.presentation.relators.len());
            Ok((result, summary, true))
        }
        OrbifoldCmd::Canonical { action } => {
            let a = ws.action(action)?;
            let c = orbifold::canonical_galois_cover(&a);
            let valid = orbifold::validate_equivariant_cover(&a, &c).is_ok();
            let connected = orbifold::is_groupoid_connected(&c);
            let galois = orbifold::is_galois_equivariant(&a, &c, budget).map_err(to_err)?;
            let aut = orbifold::equivariant_aut(&a, &c, budget).map_err(to_err)?;
            let iso = group::find_isomorphism(&aut.group, &a.group).is_some();
            let result = json!({
                "degree": c.cover.degree_over(0),
                "valid": valid,
                "groupoid_connected": connected,
                "galois": galois,
                "aut_order": aut.group.order(),
                "aut_isomorphic_to_group": iso,
            });
            let ok = valid && connected && galois && iso;
            Ok((result, format!("canonical cover of degree {}", a.group.order()), ok))
        }
        OrbifoldCmd::ExactSeq { action, base } => {
            let a = ws.action(action)?;
            let b = base_vertex(&a.space, base)?;
            let r = orbifold::quotient_exact_sequence(&a, b, cli.degree_cap, budget).map_err(to_err)?;
            let gens = &r.data.presentation.generators;
            let witnesses: Vec<Value> = r
                .e1_witnesses
                .iter()
                .enumerate()
                .map(|(e, w)| {
                    json!({
                        "element": a.group.name_of(e),
                        "word": w.as_ref().map(|w| w.display(gens)),
                    })
                })
                .collect();
            let e3: Vec<Value> = r
                .e3
                .iter()
                .map(|row| {
                    json!({
                        "degree": row.degree,
                        "connected_covers": row.connected_covers,
                        "transitive_classes": row.transitive_action_classes,
                        "all_covers": row.all_covers,
                        "all_classes": row.all_action_classes,
                        "ok": row.ok(),
                    })
                })
                .collect();
            let ok = r.all_ok();
            let result = json!({
                "relators_die": r.relators_die,
                "e1_surjective": r.e1_surjective,
                "e1_witnesses": witnesses,
                "e2_trivial": r.e2_trivial,
                "e3": e3,
                "all_ok": ok,
            });
            Ok((result, format!("exact sequence evidence: {ok}"), ok))
        }
        OrbifoldCmd::Enumerate { action, degree, base } => {
            let a = ws.action(action)?;
            let b = base_vertex(&a.space, base)?;
            let classes = orbifold::enumerate_equivariant_covers(&a, b, *degree, budget).map_err(to_err)?;
            let items: Vec<Value> = classes
                .iter()
                .map(|c| {
                    json!({
                        "total_vertices": c.cover.total.vertex_count(),
                        "components": c.cover.total.components().len(),
                        "groupoid_connected": orbifold::is_groupoid_connected(c),
                    })
                })
                .collect();
            let summary = format!("{} equivariant cover classes at degree {degree}", classes.len());
            Ok((json!({ "count": classes.len(), "classes": items }), summary, true))
        }
    }
}

fn simplicial_cmd(
    cmd: &SimplicialCmd,
    cli: &Cli,
    ws: &Workspace,
    budget: &Budget,
) -> Result<(Value, String, bool), CliError> {
    let to_err = |e: simplicial::SimplicialError| -> CliError {
        match e {
            simplicial::SimplicialError::Cover(cover::CoverError::Budget(b)) => CliError::Budget {
                message: b.to_string(),
            },
            other => CliError::Invariant {
                message: other.to_string(),
            },
        }
    };
    match cmd {
        SimplicialCmd::Nerve { cover: cname, trunc } => {
            let c = ws.cover(cname)?;
            let nerve = simplicial::cech_nerve(&c, *trunc);
            let hyper = simplicial::is_hypercovering(&nerve).map_err(to_err)?;
            let vertices: Vec<usize> = nerve.levels.iter().map(|g| g.vertex_count()).collect();
            let darts: Vec<usize> = nerve.levels.iter().map(|g| g.dart_count()).collect();
            let components: Vec<usize> = nerve.levels.iter().map(|g| g.components().len()).collect();
            let result = json!({
                "level_vertices": vertices,
                "level_darts": darts,
                "level_components": components,
                "hypercovering": hyper,
            });
            Ok((result, format!("nerve to truncation {trunc}"), true))
        }
        SimplicialCmd::Pi1 { simplicial: sname, base } => {
            let s = ws.simplicial(sname)?;
            let p = simplicial::edge_path_group(&s, *base).map_err(to_err)?;
            let result = json!({
                "generators": p.generators,
                "relators": word_strings(&p.generators, &p.relators),
                "abelianization": abel_json(&fpgroup::abelianization(&p)),
            });
            Ok((result, format!("edge-path group on {} generators", p.rank()), true))
        }
        SimplicialCmd::Cosk { simplicial: sname, m } => {
            let s = ws.simplicial(sname)?;
            let c = simplicial::coskeleton(&s, *m).map_err(to_err)?;
            Ok((
                json!({ "sizes": c.sizes }),
                format!("coskeleton at level {m}: sizes {:?}", c.sizes),
                true,
            ))
        }
        SimplicialCmd::Hypercheck { cover: cname, trunc } => {
            let c = ws.cover(cname)?;
            let nerve = simplicial::cech_nerve(&c, *trunc);
            let hyper = simplicial::is_hypercovering(&nerve).map_err(to_err)?;
            Ok((json!({ "hypercovering": hyper }), format!("hypercovering: {hyper}"), true))
        }
        SimplicialCmd::Prop53 { cover: cname, base } => {
            let c = ws.cover(cname)?;
            let b = base_vertex(&c.base, base)?;
            let r = simplicial::prop53_check(&c, b, cli.spectrum_degree, budget).map_err(to_err)?;
            let ok = r.matches();
            let result = json!({
                "nerve_abelianization": abel_json(&r.nerve_side_abelianization),
                "quotient_abelianization": abel_json(&r.quotient_side_abelianization),
                "nerve_spectrum": spectrum_json(&r.nerve_side_spectrum),
                "quotient_spectrum": spectrum_json(&r.quotient_side_spectrum),
                "hypercovering": r.hypercovering_ok,
                "match": ok,
            });
            Ok((result, format!("comparison match: {ok}"), ok))
        }
    }
}
