//! The fixture library: groups, graphs and graph actions used by the test
//! and acceptance suites and addressable from the command line.

use crate::cover::{Graph, GraphMorphism};
use crate::group::{self, FiniteGroup};
use crate::orbifold::{validate_action, GraphAction};

/// Named groups of order ≤ 16.
pub fn group_library() -> Vec<(String, FiniteGroup)> {
    let mut lib: Vec<(String, FiniteGroup)> = Vec::new();
    for n in 1..=16 {
        lib.push((format!("z{n}"), group::cyclic(n)));
    }
    let z2 = group::cyclic(2);
    let z4 = group::cyclic(4);
    lib.push(("v4".into(), group::direct_product(&z2, &z2)));
    lib.push(("z2xz4".into(), group::direct_product(&z2, &z4)));
    lib.push((
        "z2xz2xz2".into(),
        group::direct_product(&group::direct_product(&z2, &z2), &z2),
    ));
    lib.push(("s3".into(), group::symmetric(3)));
    lib.push(("d4".into(), group::dihedral(4)));
    lib.push(("q8".into(), group::quaternion8()));
    lib.push(("d5".into(), group::dihedral(5)));
    lib.push(("d6".into(), group::dihedral(6)));
    lib.push(("a4".into(), group::alternating(4)));
    lib.push(("z2xz6".into(), group::direct_product(&z2, &group::cyclic(6))));
    lib.push(("d7".into(), group::dihedral(7)));
    lib.push(("d8".into(), group::dihedral(8)));
    lib.push(("z4xz4".into(), group::direct_product(&z4, &z4)));
    lib.push(("z2xz8".into(), group::direct_product(&z2, &group::cyclic(8))));
    lib
}

pub fn group_library_up_to(max_order: usize) -> Vec<(String, FiniteGroup)> {
    group_library()
        .into_iter()
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

pub fn group_by_name(name: &str) -> FiniteGroup {
    group_library()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| g)
        .unwrap_or_else(|| panic!("no fixture group named '{name}'"))
}

/// Named graphs; every graph with at most 4 edges here feeds the nerve and
/// trivialization sweeps.
pub fn graph_library() -> Vec<(String, Graph)> {
    let mut lib = Vec::new();
    lib.push((
        "loop".to_string(),
        Graph::from_edges(vec!["v".into()], &[(0, 0)]),
    ));
    lib.push((
        "wedge2".to_string(),
        Graph::from_edges(vec!["v".into()], &[(0, 0), (0, 0)]),
    ));
    lib.push((
        "path2".to_string(),
        Graph::from_edges(vec!["u".into(), "m".into(), "w".into()], &[(0, 1), (1, 2)]),
    ));
    lib.push((
        "cycle2".to_string(),
        Graph::from_edges(vec!["u".into(), "w".into()], &[(0, 1), (0, 1)]),
    ));
    lib.push((
        "cycle3".to_string(),
        Graph::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2), (2, 0)],
        ),
    ));
    lib.push((
        "theta".to_string(),
        Graph::from_edges(vec!["u".into(), "w".into()], &[(0, 1), (0, 1), (0, 1)]),
    ));
    lib.push((
        "cycle4".to_string(),
        Graph::from_edges(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        ),
    ));
    lib.push((
        "lollipop".to_string(),
        Graph::from_edges(vec!["v".into(), "w".into()], &[(0, 0), (0, 1)]),
    ));
    lib.push((
        "k4".to_string(),
        Graph::from_edges(
            (0..4).map(|i| format!("v{i}")).collect(),
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        ),
    ));
    lib
}

pub fn graph_by_name(name: &str) -> Graph {
    graph_library()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, g)| g)
        .unwrap_or_else(|| panic!("no fixture graph named '{name}'"))
}

/// Closes generator automorphisms into a [`GraphAction`]: elements are the
/// generated automorphisms sorted canonically, multiplied so that
/// `act(g)∘act(h) = act(g·h)` holds on the nose.
pub fn action_from_generator_morphisms(space: &Graph, gens: &[GraphMorphism]) -> GraphAction {
    let id = GraphMorphism::identity(space);
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let next = m.then(g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let morphisms: Vec<GraphMorphism> = seen.into_iter().collect();
    let pos = |m: &GraphMorphism| morphisms.binary_search(m).expect("closure");
    let names = (0..morphisms.len())
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
        .collect();
    // function-order table: (a·b) acts by act(a)∘act(b)
    let table: Vec<Vec<usize>> = morphisms
        .iter()
        .map(|a| morphisms.iter().map(|b| pos(&b.then(a))).collect())
        .collect();
    let group = FiniteGroup::new(names, table).expect("automorphism closure group");
    validate_action(&group, space, &morphisms).expect("generated action is valid")
}

/// Named actions of finite groups on fixture graphs. Every entry validates;
/// the names encode group and space.
pub fn action_library() -> Vec<(String, GraphAction)> {
    let mut lib: Vec<(String, GraphAction)> = Vec::new();

    lib.push((
        "trivial-loop".into(),
        GraphAction::trivial(&group::trivial(), &graph_by_name("loop")),
    ));
    lib.push((
        "trivial-wedge2".into(),
        GraphAction::trivial(&group::trivial(), &graph_by_name("wedge2")),
    ));
    lib.push((
        "z2-trivial-loop".into(),
        GraphAction::trivial(&group::cyclic(2), &graph_by_name("loop")),
    ));

    // Z/2 reflecting the two-edge path across its midpoint
    let path2 = graph_by_name("path2");
    lib.push((
        "z2-reflect-path2".into(),
        action_from_generator_morphisms(
            &path2,
            &[GraphMorphism {
                vmap: vec![2, 1, 0],
                dmap: vec![3, 2, 1, 0],
            }],
        ),
    ));

    // Z/2 rotating the 4-cycle by two steps (free)
    let cycle4 = graph_by_name("cycle4");
    let rot2 = GraphMorphism {
        vmap: vec![2, 3, 0, 1],
        dmap: vec![4, 5, 6, 7, 0, 1, 2, 3],
    };
    lib.push((
        "z2-rotate-cycle4".into(),
        action_from_generator_morphisms(&cycle4, &[rot2.clone()]),
    ));

    // Z/4 rotating the 4-cycle one step (free)
    let rot1 = GraphMorphism {
        vmap: vec![1, 2, 3, 0],
        dmap: vec![2, 3, 4, 5, 6, 7, 0, 1],
    };
    lib.push((
        "z4-rotate-cycle4".into(),
        action_from_generator_morphisms(&cycle4, &[rot1]),
    ));

    // Klein four group on the 4-cycle: rotation by two and a diagonal flip
    let flip = GraphMorphism {
        vmap: vec![0, 3, 2, 1],
        dmap: vec![7, 6, 5, 4, 3, 2, 1, 0],
    };
    lib.push((
        "v4-cycle4".into(),
        action_from_generator_morphisms(&cycle4, &[rot2, flip]),
    ));

    // Z/3 rotating the triangle (free)
    let cycle3 = graph_by_name("cycle3");
    let rot3 = GraphMorphism {
        vmap: vec![1, 2, 0],
        dmap: vec![2, 3, 4, 5, 0, 1],
    };
    lib.push((
        "z3-rotate-cycle3".into(),
        action_from_generator_morphisms(&cycle3, &[rot3.clone()]),
    ));

    // the full dihedral symmetry of the triangle
    let refl3 = GraphMorphism {
        vmap: vec![0, 2, 1],
        dmap: vec![5, 4, 3, 2, 1, 0],
    };
    lib.push((
        "d3-cycle3".into(),
        action_from_generator_morphisms(&cycle3, &[rot3, refl3]),
    ));

    // Z/2 flipping the loop's darts
    let loop_g = graph_by_name("loop");
    lib.push((
        "z2-flip-loop".into(),
        action_from_generator_morphisms(
            &loop_g,
            &[GraphMorphism {
                vmap: vec![0],
                dmap: vec![1, 0],
            }],
        ),
    ));

    // Z/2 swapping the two parallel edges of the 2-cycle, vertices fixed
    let cycle2 = graph_by_name("cycle2");
    lib.push((
        "z2-swap-cycle2".into(),
        action_from_generator_morphisms(
            &cycle2,
            &[GraphMorphism {
                vmap: vec![0, 1],
                dmap: vec![2, 3, 0, 1],
            }],
        ),
    ));

    // Z/2 antipode on the 2-cycle (free); quotient is the loop
    lib.push((
        "z2-antipode-cycle2".into(),
        action_from_generator_morphisms(
            &cycle2,
            &[GraphMorphism {
                vmap: vec![1, 0],
                dmap: vec![3, 2, 1, 0],
            }],
        ),
    ));

    // Z/2 swapping the two loops of the wedge
    let wedge2 = graph_by_name("wedge2");
    lib.push((
        "z2-swap-wedge2".into(),
        action_from_generator_morphisms(
            &wedge2,
            &[GraphMorphism {
                vmap: vec![0],
                dmap: vec![2, 3, 0, 1],
            }],
        ),
    ));

    // the symmetric group on the theta graph's three parallel edges
    let theta = graph_by_name("theta");
    let swap01 = GraphMorphism {
        vmap: vec![0, 1],
        dmap: vec![2, 3, 0, 1, 4, 5],
    };
    let cyc012 = GraphMorphism {
        vmap: vec![0, 1],
        dmap: vec![2, 3, 4, 5, 0, 1],
    };
    lib.push((
        "s3-theta".into(),
        action_from_generator_morphisms(&theta, &[swap01, cyc012]),
    ));

    lib
}

pub fn action_by_name(name: &str) -> GraphAction {
    action_library()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, a)| a)
        .unwrap_or_else(|| panic!("no fixture action named '{name}'"))
}
