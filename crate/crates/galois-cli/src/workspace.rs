//! Parser for the shared line-oriented text format.
//!
//! A file is a sequence of sections `[kind] key=value; key=value; ...` with
//! `#` comments. Items are separated by `;` or newlines; the `table=` and
//! `act=` keys consume the remainder of their section (their values contain
//! separators of their own). Entities are named and may reference earlier
//! or later entities in any of the loaded files; unresolved references are
//! parse errors. Names not defined in any file fall back to the built-in
//! fixture library for groups, graphs and actions.

use galois_core::cover::{CoveringMap, Graph, GraphMorphism};
use galois_core::fixtures;
use galois_core::fpgroup::{FiniteAction, Presentation, Word};
use galois_core::group::{self, FiniteGroup, GroupHom};
use galois_core::gset::{EquivariantMap, GSet};
use galois_core::orbifold::{validate_action, GraphAction};
use galois_core::perm::Perm;
use galois_core::simplicial::TruncatedSimplicialSet;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Syntax or reference errors: exit code 2.
    Parse {
        location: String,
        message: String,
    },
    /// Invariant violations in otherwise well-formed input: exit code 1.
    Invariant { message: String },
    /// Budget refusals: exit code 1, distinct message.
    Budget { message: String },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { location, message } => write!(f, "parse error at {location}: {message}"),
            CliError::Invariant { message } => write!(f, "invariant violation: {message}"),
            CliError::Budget { message } => write!(f, "budget exceeded: {message}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Invariant { .. } | CliError::Budget { .. } => 1,
        }
    }
}

impl From<galois_core::BudgetError> for CliError {
    fn from(e: galois_core::BudgetError) -> Self {
        CliError::Budget {
            message: e.to_string(),
        }
    }
}

#[derive(Default)]
pub struct Workspace {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub morphisms: BTreeMap<String, GroupHom>,
    pub gsets: BTreeMap<String, GSet>,
    pub eqmaps: BTreeMap<String, EquivariantMap>,
    pub graphs: BTreeMap<String, Graph>,
    pub covers: BTreeMap<String, CoveringMap>,
    pub actions: BTreeMap<String, GraphAction>,
    pub presentations: BTreeMap<String, Presentation>,
    pub factions: BTreeMap<String, (Presentation, FiniteAction)>,
    pub simplicials: BTreeMap<String, TruncatedSimplicialSet>,
}

struct Section {
    kind: String,
    location: String,
    items: Vec<(String, String)>,
}

impl Section {
    fn get(&self, key: &str) -> Result<&str, CliError> {
        self.items
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| parse_err(&self.location, format!("missing field '{key}'")))
    }

    fn get_opt(&self, key: &str) -> Option<&str> {
        self.items
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn parse_err(location: &str, message: impl Into<String>) -> CliError {
    CliError::Parse {
        location: location.to_string(),
        message: message.into(),
    }
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Splits a file into sections; tracks 1-based line numbers for messages.
fn split_sections(file: &str, text: &str) -> Result<Vec<Section>, CliError> {
    let clean = strip_comments(text);
    let mut sections = Vec::new();
    let mut current: Option<(String, usize, String)> = None;
    for (lineno, line) in clean.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.starts_with('[') {
            if let Some((kind, start, body)) = current.take() {
                sections.push(make_section(file, kind, start, body)?);
            }
            let close = trimmed.find(']').ok_or_else(|| {
                parse_err(&format!("{file}:{}", lineno + 1), "unterminated section header")
            })?;
            let kind = trimmed[1..close].trim().to_string();
            let rest = trimmed[close + 1..].to_string();
            current = Some((kind, lineno + 1, rest));
        } else if let Some((_, _, body)) = current.as_mut() {
            body.push('\n');
            body.push_str(line);
        } else if !line.trim().is_empty() {
            return Err(parse_err(
                &format!("{file}:{}", lineno + 1),
                "content before the first section header",
            ));
        }
    }
    if let Some((kind, start, body)) = current.take() {
        sections.push(make_section(file, kind, start, body)?);
    }
    Ok(sections)
}

fn make_section(file: &str, kind: String, line: usize, body: String) -> Result<Section, CliError> {
    let location = format!("{file}:{line}");
    let mut items = Vec::new();
    let mut rest = body.as_str();
    loop {
        rest = rest.trim_start_matches([' ', '\t', '\n', '\r', ';']);
        if rest.is_empty() {
            break;
        }
        let eq = rest
            .find('=')
            .ok_or_else(|| parse_err(&location, format!("expected key=value near '{}'", excerpt(rest))))?;
        let key = rest[..eq].trim().to_string();
        if key.contains([';', '\n']) {
            return Err(parse_err(&location, format!("malformed key near '{}'", excerpt(rest))));
        }
        let tail = &rest[eq + 1..];
        if key == "table" || key == "act" {
            // these consume the remainder of the section
            items.push((key, tail.trim().to_string()));
            break;
        }
        let end = tail.find([';', '\n']).unwrap_or(tail.len());
        items.push((key, tail[..end].trim().to_string()));
        rest = &tail[end..];
    }
    Ok(Section {
        kind,
        location,
        items,
    })
}

fn excerpt(s: &str) -> String {
    s.chars().take(24).collect::<String>().replace('\n', "\\n")
}

/// Splits on commas at parenthesis depth zero.
fn split_top_commas(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(c),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur.trim().to_string());
    }
    parts
}

fn name_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

fn invariant(message: impl fmt::Debug) -> CliError {
    CliError::Invariant {
        message: format!("{message:?}"),
    }
}

impl Workspace {
    pub fn parse(files: &[(String, String)]) -> Result<Workspace, CliError> {
        let mut sections = Vec::new();
        for (file, text) in files {
            sections.extend(split_sections(file, text)?);
        }
        let mut ws = Workspace::default();
        let mut auto = 0usize;

        // groups and graphs first so later sections can reference them
        for s in &sections {
            match s.kind.as_str() {
                "group" => {
                    let (name, g) = parse_group(s)?;
                    insert_unique(&mut ws.groups, name, g, &s.location)?;
                }
                "group-perm" => {
                    let (name, g) = parse_group_perm(s)?;
                    insert_unique(&mut ws.groups, name, g, &s.location)?;
                }
                "graph" => {
                    let (name, g) = parse_graph(s)?;
                    insert_unique(&mut ws.graphs, name, g, &s.location)?;
                }
                "presentation" => {
                    let (name, p) = parse_presentation(s)?;
                    insert_unique(&mut ws.presentations, name, p, &s.location)?;
                }
                _ => {}
            }
        }
        for s in &sections {
            match s.kind.as_str() {
                "group" | "group-perm" | "graph" | "presentation" | "eqmap" => {}
                "morphism" => {
                    let name = match s.get_opt("name") {
                        Some(n) => n.to_string(),
                        None => {
                            auto += 1;
                            format!("morphism{auto}")
                        }
                    };
                    let m = parse_morphism(s, &ws)?;
                    insert_unique(&mut ws.morphisms, name, m, &s.location)?;
                }
                "gset" => {
                    let (name, y) = parse_gset(s, &ws)?;
                    insert_unique(&mut ws.gsets, name, y, &s.location)?;
                }
                "cover" => {
                    let (name, c) = parse_cover(s, &ws)?;
                    insert_unique(&mut ws.covers, name, c, &s.location)?;
                }
                "action" => {
                    let (name, a) = parse_action(s, &ws)?;
                    insert_unique(&mut ws.actions, name, a, &s.location)?;
                }
                "faction" => {
                    let (name, fa) = parse_faction(s, &ws)?;
                    insert_unique(&mut ws.factions, name, fa, &s.location)?;
                }
                "simplicial" => {
                    let (name, t) = parse_simplicial(s)?;
                    insert_unique(&mut ws.simplicials, name, t, &s.location)?;
                }
                other => {
                    return Err(parse_err(&s.location, format!("unknown section kind '{other}'")))
                }
            }
        }
        // eqmaps reference gsets, so resolve them last
        for s in &sections {
            if s.kind == "eqmap" {
                let name = match s.get_opt("name") {
                    Some(n) => n.to_string(),
                    None => {
                        auto += 1;
                        format!("eqmap{auto}")
                    }
                };
                let m = parse_eqmap(s, &ws)?;
                insert_unique(&mut ws.eqmaps, name, m, &s.location)?;
            }
        }
        Ok(ws)
    }

    pub fn group(&self, name: &str) -> Result<FiniteGroup, CliError> {
        if let Some(g) = self.groups.get(name) {
            return Ok(g.clone());
        }
        fixtures::group_library()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| missing("group", name))
    }

    pub fn graph(&self, name: &str) -> Result<Graph, CliError> {
        if let Some(g) = self.graphs.get(name) {
            return Ok(g.clone());
        }
        fixtures::graph_library()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| missing("graph", name))
    }

    pub fn action(&self, name: &str) -> Result<GraphAction, CliError> {
        if let Some(a) = self.actions.get(name) {
            return Ok(a.clone());
        }
        fixtures::action_library()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| missing("action", name))
    }

    pub fn gset(&self, name: &str) -> Result<GSet, CliError> {
        self.gsets.get(name).cloned().ok_or_else(|| missing("gset", name))
    }

    pub fn cover(&self, name: &str) -> Result<CoveringMap, CliError> {
        self.covers.get(name).cloned().ok_or_else(|| missing("cover", name))
    }

    pub fn morphism(&self, name: &str) -> Result<GroupHom, CliError> {
        self.morphisms
            .get(name)
            .cloned()
            .ok_or_else(|| missing("morphism", name))
    }

    pub fn eqmap(&self, name: &str) -> Result<EquivariantMap, CliError> {
        self.eqmaps.get(name).cloned().ok_or_else(|| missing("eqmap", name))
    }

    pub fn presentation(&self, name: &str) -> Result<Presentation, CliError> {
        self.presentations
            .get(name)
            .cloned()
            .ok_or_else(|| missing("presentation", name))
    }

    pub fn faction(&self, name: &str) -> Result<(Presentation, FiniteAction), CliError> {
        self.factions
            .get(name)
            .cloned()
            .ok_or_else(|| missing("faction", name))
    }

    pub fn simplicial(&self, name: &str) -> Result<TruncatedSimplicialSet, CliError> {
        self.simplicials
            .get(name)
            .cloned()
            .ok_or_else(|| missing("simplicial set", name))
    }
}

fn missing(kind: &str, name: &str) -> CliError {
    CliError::Parse {
        location: "<arguments>".into(),
        message: format!("no {kind} named '{name}'"),
    }
}

fn insert_unique<T>(
    map: &mut BTreeMap<String, T>,
    name: String,
    value: T,
    location: &str,
) -> Result<(), CliError> {
    if map.contains_key(&name) {
        return Err(parse_err(location, format!("duplicate name '{name}'")));
    }
    map.insert(name, value);
    Ok(())
}

fn parse_group(s: &Section) -> Result<(String, FiniteGroup), CliError> {
    let name = s.get("name")?.to_string();
    let elements = name_list(s.get("elements")?);
    let index = |n: &str| -> Result<usize, CliError> {
        elements
            .iter()
            .position(|e| e == n)
            .ok_or_else(|| parse_err(&s.location, format!("unknown element '{n}' in table")))
    };
    let rows: Vec<&str> = s.get("table")?.split(';').collect();
    if rows.len() != elements.len() {
        return Err(parse_err(
            &s.location,
            format!("expected {} table rows, found {}", elements.len(), rows.len()),
        ));
    }
    let mut table = Vec::new();
    for row in rows {
        let entries = name_list(row);
        if entries.len() != elements.len() {
            return Err(parse_err(&s.location, "ragged table row"));
        }
        table.push(entries.iter().map(|e| index(e)).collect::<Result<Vec<_>, _>>()?);
    }
    let g = FiniteGroup::new(elements, table).map_err(invariant)?;
    Ok((name, g))
}

fn parse_group_perm(s: &Section) -> Result<(String, FiniteGroup), CliError> {
    let name = s.get("name")?.to_string();
    let degree: usize = s
        .get("degree")?
        .parse()
        .map_err(|_| parse_err(&s.location, "bad degree"))?;
    let mut gens = Vec::new();
    for text in split_top_commas(s.get("gens")?) {
        gens.push(Perm::from_cycles(degree, &text).map_err(|e| parse_err(&s.location, e))?);
    }
    Ok((name, group::from_perms(degree, &gens).0))
}

fn parse_graph(s: &Section) -> Result<(String, Graph), CliError> {
    let name = s.get("name")?.to_string();
    let vertices = name_list(s.get("vertices")?);
    let vindex = |n: &str| -> Result<usize, CliError> {
        vertices
            .iter()
            .position(|v| v == n)
            .ok_or_else(|| parse_err(&s.location, format!("unknown vertex '{n}'")))
    };
    let mut edges = Vec::new();
    for e in split_top_commas(s.get_opt("edges").unwrap_or("")) {
        let inner = e
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| parse_err(&s.location, format!("edge '{e}' is not (u,v)")))?;
        let ends = name_list(inner);
        if ends.len() != 2 {
            return Err(parse_err(&s.location, format!("edge '{e}' needs two endpoints")));
        }
        edges.push((vindex(&ends[0])?, vindex(&ends[1])?));
    }
    Ok((name, Graph::from_edges(vertices, &edges)))
}

fn parse_presentation(s: &Section) -> Result<(String, Presentation), CliError> {
    let name = s.get("name")?.to_string();
    let gens = name_list(s.get("gens")?);
    let mut relators = Vec::new();
    for r in split_top_commas(s.get_opt("rels").unwrap_or("")) {
        relators.push(Word::parse(&gens, &r).map_err(|e| parse_err(&s.location, e))?);
    }
    let p = Presentation::new(gens, relators).map_err(invariant)?;
    Ok((name, p))
}

fn parse_morphism(s: &Section, ws: &Workspace) -> Result<GroupHom, CliError> {
    let from = ws.group(s.get("from")?)?;
    let to = ws.group(s.get("to")?)?;
    let mut map = vec![usize::MAX; from.order()];
    for pair in name_list(s.get("map")?) {
        let (x, y) = pair
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("map entry '{pair}' is not x:y")))?;
        let xi = from
            .index_of(x.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown source element '{x}'")))?;
        let yi = to
            .index_of(y.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown target element '{y}'")))?;
        map[xi] = yi;
    }
    if map.contains(&usize::MAX) {
        return Err(parse_err(&s.location, "map does not cover every source element"));
    }
    GroupHom::new(from, to, map).map_err(invariant)
}

fn parse_gset(s: &Section, ws: &Workspace) -> Result<(String, GSet), CliError> {
    let name = s.get("name")?.to_string();
    let group = ws.group(s.get("group")?)?;
    let carrier = name_list(s.get("carrier")?);
    let cindex = |n: &str| -> Result<usize, CliError> {
        carrier
            .iter()
            .position(|c| c == n)
            .ok_or_else(|| parse_err(&s.location, format!("unknown carrier point '{n}'")))
    };
    let mut act = vec![None; group.order()];
    for entry in s.get("act")?.split([';', '\n']) {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (g, images) = entry
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("act entry '{entry}' is not g: images")))?;
        let gi = group
            .index_of(g.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown group element '{g}'")))?;
        let row = name_list(images)
            .iter()
            .map(|n| cindex(n))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != carrier.len() {
            return Err(parse_err(&s.location, format!("act row for '{g}' has wrong length")));
        }
        act[gi] = Some(row);
    }
    let act: Vec<Vec<usize>> = act
        .into_iter()
        .enumerate()
        .map(|(g, row)| {
            row.ok_or_else(|| {
                parse_err(&s.location, format!("missing act row for element '{}'", group.name_of(g)))
            })
        })
        .collect::<Result<_, _>>()?;
    let y = GSet::new(group, carrier, act).map_err(invariant)?;
    Ok((name, y))
}

fn parse_eqmap(s: &Section, ws: &Workspace) -> Result<EquivariantMap, CliError> {
    let from = ws.gset(s.get("from")?)?;
    let to = ws.gset(s.get("to")?)?;
    let mut map = vec![usize::MAX; from.size()];
    for pair in name_list(s.get("map")?) {
        let (x, y) = pair
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("map entry '{pair}' is not x:y")))?;
        let xi = from
            .point_names()
            .iter()
            .position(|p| p == x.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown source point '{x}'")))?;
        let yi = to
            .point_names()
            .iter()
            .position(|p| p == y.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown target point '{y}'")))?;
        map[xi] = yi;
    }
    if map.contains(&usize::MAX) {
        return Err(parse_err(&s.location, "map does not cover every source point"));
    }
    EquivariantMap::new(from, to, map).map_err(invariant)
}

fn parse_cover(s: &Section, ws: &Workspace) -> Result<(String, CoveringMap), CliError> {
    let name = s.get("name")?.to_string();
    let base = ws.graph(s.get("base")?)?;
    let total = ws.graph(s.get("total")?)?;
    let mut vmap = vec![usize::MAX; total.vertex_count()];
    for pair in name_list(s.get("vmap")?) {
        let (t, b) = pair
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("vmap entry '{pair}' is not t:b")))?;
        let ti = total
            .vertex_names()
            .iter()
            .position(|v| v == t.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown total vertex '{t}'")))?;
        let bi = base
            .vertex_names()
            .iter()
            .position(|v| v == b.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown base vertex '{b}'")))?;
        vmap[ti] = bi;
    }
    let mut dmap = vec![usize::MAX; total.dart_count()];
    for pair in name_list(s.get("dmap")?) {
        let (t, b) = pair
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("dmap entry '{pair}' is not i:j")))?;
        let ti: usize = t
            .trim()
            .parse()
            .map_err(|_| parse_err(&s.location, format!("bad dart index '{t}'")))?;
        let bi: usize = b
            .trim()
            .parse()
            .map_err(|_| parse_err(&s.location, format!("bad dart index '{b}'")))?;
        if ti >= total.dart_count() || bi >= base.dart_count() {
            return Err(parse_err(&s.location, format!("dart index out of range in '{pair}'")));
        }
        dmap[ti] = bi;
    }
    if vmap.contains(&usize::MAX) || dmap.contains(&usize::MAX) {
        return Err(parse_err(&s.location, "cover maps must cover every vertex and dart"));
    }
    let c = CoveringMap::new(base, total, GraphMorphism { vmap, dmap }).map_err(invariant)?;
    Ok((name, c))
}

fn parse_action(s: &Section, ws: &Workspace) -> Result<(String, GraphAction), CliError> {
    let name = s.get("name")?.to_string();
    let group = ws.group(s.get("group")?)?;
    let graph = ws.graph(s.get("graph")?)?;
    let mut act: Vec<Option<GraphMorphism>> = vec![None; group.order()];
    for entry in s.get("act")?.split([';', '\n']) {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let (g, maps) = entry
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("act entry '{entry}' is not g: vperm | dperm")))?;
        let gi = group
            .index_of(g.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown group element '{g}'")))?;
        let (vpart, dpart) = maps
            .split_once('|')
            .ok_or_else(|| parse_err(&s.location, format!("act entry '{entry}' needs vperm | dperm")))?;
        let vmap = name_list(vpart)
            .iter()
            .map(|n| {
                graph
                    .vertex_names()
                    .iter()
                    .position(|v| v == n)
                    .ok_or_else(|| parse_err(&s.location, format!("unknown vertex '{n}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let dmap = name_list(dpart)
            .iter()
            .map(|n| {
                n.parse::<usize>()
                    .map_err(|_| parse_err(&s.location, format!("bad dart index '{n}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vmap.len() != graph.vertex_count() || dmap.len() != graph.dart_count() {
            return Err(parse_err(&s.location, format!("act entry for '{g}' has wrong lengths")));
        }
        act[gi] = Some(GraphMorphism { vmap, dmap });
    }
    let act: Vec<GraphMorphism> = act
        .into_iter()
        .enumerate()
        .map(|(g, m)| {
            m.ok_or_else(|| {
                parse_err(&s.location, format!("missing act entry for element '{}'", group.name_of(g)))
            })
        })
        .collect::<Result<_, _>>()?;
    let a = validate_action(&group, &graph, &act).map_err(invariant)?;
    Ok((name, a))
}

fn parse_faction(s: &Section, ws: &Workspace) -> Result<(String, (Presentation, FiniteAction)), CliError> {
    let name = s.get("name")?.to_string();
    let pres = ws.presentation(s.get("presentation")?)?;
    let degree: usize = s
        .get("degree")?
        .parse()
        .map_err(|_| parse_err(&s.location, "bad degree"))?;
    let mut images = vec![None; pres.rank()];
    for entry in split_top_commas(s.get("images")?) {
        let (g, cycles) = entry
            .split_once(':')
            .ok_or_else(|| parse_err(&s.location, format!("image entry '{entry}' is not gen:cycles")))?;
        let gi = pres
            .generators
            .iter()
            .position(|x| x == g.trim())
            .ok_or_else(|| parse_err(&s.location, format!("unknown generator '{g}'")))?;
        images[gi] =
            Some(Perm::from_cycles(degree, cycles.trim()).map_err(|e| parse_err(&s.location, e))?);
    }
    let images: Vec<Perm> = images
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.ok_or_else(|| {
                parse_err(&s.location, format!("missing image for generator '{}'", pres.generators[i]))
            })
        })
        .collect::<Result<_, _>>()?;
    let action = FiniteAction::new(&pres, degree, images).map_err(invariant)?;
    Ok((name, (pres, action)))
}

fn parse_simplicial(s: &Section) -> Result<(String, TruncatedSimplicialSet), CliError> {
    let name = s.get("name")?.to_string();
    let trunc: usize = s
        .get("trunc")?
        .parse()
        .map_err(|_| parse_err(&s.location, "bad truncation level"))?;
    let mut levels: Vec<Vec<String>> = Vec::new();
    for k in 0..=trunc {
        levels.push(name_list(s.get(&format!("level{k}"))?));
    }
    let index = |k: usize, n: &str| -> Result<usize, CliError> {
        levels[k]
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| parse_err(&s.location, format!("unknown level-{k} simplex '{n}'")))
    };
    let parse_map = |key: &str, from: usize, to: usize| -> Result<Vec<usize>, CliError> {
        let mut map = vec![usize::MAX; levels[from].len()];
        for pair in name_list(s.get(key)?) {
            let (x, y) = pair
                .split_once(':')
                .ok_or_else(|| parse_err(&s.location, format!("map entry '{pair}' is not x:y")))?;
            map[index(from, x.trim())?] = index(to, y.trim())?;
        }
        if map.contains(&usize::MAX) {
            return Err(parse_err(&s.location, format!("{key} does not cover level {from}")));
        }
        Ok(map)
    };
    let mut faces = Vec::new();
    for k in 1..=trunc {
        let mut maps = Vec::new();
        for i in 0..=k {
            maps.push(parse_map(&format!("d{i}@{k}"), k, k - 1)?);
        }
        faces.push(maps);
    }
    let mut degens = Vec::new();
    for k in 0..trunc {
        let mut maps = Vec::new();
        for i in 0..=k {
            maps.push(parse_map(&format!("s{i}@{k}"), k, k + 1)?);
        }
        degens.push(maps);
    }
    let sizes = levels.iter().map(|l| l.len()).collect();
    let t = TruncatedSimplicialSet::new(sizes, faces, degens).map_err(invariant)?;
    Ok((name, t))
}
