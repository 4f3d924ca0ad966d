//! Acceptance suite: each test is one numbered criterion, run at its stated
//! scale, printing one pass/fail line (visible with `--nocapture`). The
//! stated wall-clock limits are asserted.

use galois_core::budget::Budget;
use galois_core::cover::{self, CoveringMap, Graph, GraphMorphism};
use galois_core::fixtures;
use galois_core::fpgroup::{self, FiniteAction};
use galois_core::group::{self, FiniteGroup};
use galois_core::groupoid;
use galois_core::gset::{self, EquivariantMap, GSet};
use galois_core::orbifold;
use galois_core::perm::Perm;
use galois_core::simplicial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn report(n: usize, title: &str, pass: bool, detail: &str, started: Instant, limit_s: u64) {
    let elapsed = started.elapsed();
    println!(
        "acceptance {n} ({title}): {} — {detail} [{:.2}s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(pass, "criterion {n} failed: {detail}");
    assert!(
        elapsed.as_secs() < limit_s,
        "criterion {n} exceeded its {limit_s}s budget"
    );
}

/// Criterion 1: for every fixture group of order ≤ 16 and every subgroup H,
/// the coset action G/H is Galois iff H is normal iff |Aut| = [G:H].
#[test]
fn acceptance_1_galois_criterion_equivalence() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (name, g) in fixtures::group_library_up_to(16) {
        for sub in group::all_subgroups(&g) {
            let y = GSet::cosets(&g, &sub);
            let index = g.order() / sub.len();
            let galois = gset::is_galois(&y);
            let normal = group::is_normal(&g, &sub);
            let aut_order = gset::aut_group(&y).group.order();
            assert_eq!(galois, normal, "{name}: Galois vs normality at H={sub:?}");
            assert_eq!(
                galois,
                aut_order == index,
                "{name}: Galois vs |Aut| = index at H={sub:?}"
            );
            checked += 1;
        }
    }
    report(
        1,
        "Galois criterion equivalence",
        true,
        &format!("{checked} transitive actions checked exhaustively"),
        started,
        10,
    );
}

fn random_hset(rng: &mut ChaCha8Rng, h: &FiniteGroup, max_size: usize) -> GSet {
    let subs = group::all_subgroups(h);
    let mut acc: Option<GSet> = None;
    let mut size = 0usize;
    for _ in 0..4 {
        let k = &subs[rng.gen_range(0..subs.len())];
        let part = GSet::cosets(h, k);
        if size + part.size() > max_size {
            continue;
        }
        size += part.size();
        acc = Some(match acc {
            None => part,
            Some(a) => a.disjoint_union(&part),
        });
        if rng.gen_bool(0.4) {
            break;
        }
    }
    acc.unwrap_or_else(|| GSet::trivial(h, 1))
}

fn isomorphic_over_y(p: &EquivariantMap, q: &EquivariantMap) -> bool {
    if p.source.size() != q.source.size() {
        return false;
    }
    gset::equivariant_maps_where(&p.source, &q.source, |r, c| q.map[c] == p.map[r])
        .into_iter()
        .any(|m| {
            let mut seen = vec![false; q.source.size()];
            m.iter().for_each(|&y| seen[y] = true);
            seen.into_iter().all(|b| b)
        })
}

/// Criterion 2: slice equivalence round trips and hom transport on 100
/// seeded random instances with |G| ≤ 12, |Y| ≤ 6, |Z| ≤ 12.
#[test]
fn acceptance_2_slice_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let library = fixtures::group_library_up_to(12);
    let mut cases = 0usize;
    while cases < 100 {
        let (_, g) = &library[rng.gen_range(0..library.len())];
        let subs = group::all_subgroups(g);
        let small: Vec<&Vec<usize>> = subs
            .iter()
            .filter(|s| g.order() / s.len() <= 6)
            .collect();
        let h_elems = small[rng.gen_range(0..small.len())];
        let y = GSet::cosets(g, h_elems);
        let a = 0usize;
        let t = gset::transversal(&y, a).unwrap();
        let stab = gset::stabilizer(&y, a).unwrap();
        let max_u = 12 / y.size().max(1);
        if max_u == 0 {
            continue;
        }
        let u = random_hset(&mut rng, &stab.group, max_u);
        let u2 = random_hset(&mut rng, &stab.group, max_u);

        // U -> slice -> fiber recovers U
        let (_, proj) = gset::hset_to_slice(&u, &y, &t).unwrap();
        let fib = gset::slice_to_hset(&proj, a).unwrap();
        assert!(
            gset::are_equivariantly_isomorphic(&fib.fiber, &u),
            "fiber does not recover the H-set"
        );

        // slice -> fiber -> slice recovers the slice over Y
        let rebuilt = gset::hset_to_slice(&fib.fiber, &y, &t).unwrap();
        assert!(
            isomorphic_over_y(&proj, &rebuilt.1),
            "rebuilt slice not isomorphic over Y"
        );

        // hom transport is bijective with the extension formula verified
        let (_, proj2) = gset::hset_to_slice(&u2, &y, &t).unwrap();
        let tr = gset::hom_transport(&proj, &proj2, a).unwrap();
        assert!(tr.bijective, "hom transport not bijective");
        assert!(tr.extension_ok, "extension formula failed");
        cases += 1;
    }
    report(
        2,
        "slice equivalence",
        true,
        "100 seeded instances round-tripped with bijective hom transport",
        started,
        30,
    );
}

/// Criterion 3: brute-force |Aut| equals the closed product formula for all
/// homomorphisms between fixture groups of order ≤ 12, and the
/// fully-faithful verdict agrees with surjectivity.
#[test]
fn acceptance_3_restriction_aut_formula() {
    let started = Instant::now();
    let library = fixtures::group_library_up_to(12);
    let mut homs_checked = 0usize;
    for (sname, source) in &library {
        for (tname, target) in &library {
            for hom in group::all_homomorphisms(source, target) {
                let r = gset::restriction_aut_card(&hom);
                assert!(
                    r.formula_matches,
                    "{sname}->{tname}: brute {} vs formula {}",
                    r.brute_count, r.formula
                );
                assert_eq!(
                    r.onto_verdict, r.actually_surjective,
                    "{sname}->{tname}: verdict disagrees with surjectivity"
                );
                homs_checked += 1;
            }
        }
    }
    report(
        3,
        "automorphism-count formula",
        true,
        &format!("{homs_checked} homomorphisms checked exhaustively"),
        started,
        60,
    );
}

/// Criterion 4: the exact-sequence certificate on every Galois coset action
/// over fixture groups of order ≤ 16.
#[test]
fn acceptance_4_exact_sequence_certificates() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (name, g) in fixtures::group_library_up_to(16) {
        for sub in group::all_subgroups(&g) {
            if !group::is_normal(&g, &sub) {
                continue;
            }
            let y = GSet::cosets(&g, &sub);
            let seq = gset::galois_exact_sequence(&y, 0).unwrap();
            assert!(seq.homomorphism_ok, "{name}: Φ not a homomorphism");
            assert!(seq.surjective, "{name}: Φ not surjective");
            assert!(seq.kernel_is_stabilizer, "{name}: kernel ≠ stabilizer");
            assert!(seq.stabilizer_normal, "{name}: stabilizer not normal");
            assert!(seq.order_product_ok, "{name}: |G| ≠ |H|·|Aut Y|");
            checked += 1;
        }
    }
    report(
        4,
        "Galois exact sequence",
        true,
        &format!("{checked} Galois objects certified"),
        started,
        10,
    );
}

/// Relabels the total graph of a cover by reversing vertex and dart order,
/// producing an equal-looking but differently-presented cover.
fn relabel_cover(p: &CoveringMap) -> CoveringMap {
    let nv = p.total.vertex_count();
    let nd = p.total.dart_count();
    let rv = |v: usize| nv - 1 - v;
    let rd = |d: usize| nd - 1 - d;
    let names = (0..nv)
        .map(|v| p.total.vertex_names()[rv(v)].clone())
        .collect();
    let dart_vertex = (0..nd).map(|d| rv(p.total.vertex_of(rd(d)))).collect();
    let dart_inv = (0..nd).map(|d| rd(p.total.inv(rd(d)))).collect();
    let total = Graph::new(names, dart_vertex, dart_inv).unwrap();
    let map = GraphMorphism {
        vmap: (0..nv).map(|v| p.map.vmap[rv(v)]).collect(),
        dmap: (0..nd).map(|d| p.map.dmap[rd(d)]).collect(),
    };
    CoveringMap::new(p.base.clone(), total, map).unwrap()
}

/// Criterion 5: monodromy round trips exactly on every action of degree ≤ 5
/// over every fixture graph with ≤ 6 edges; components match orbits; the
/// wedge has its 3 transitive double covers and the level-2 tower group has
/// order 4.
#[test]
fn acceptance_5_cover_monodromy_equivalence() {
    let started = Instant::now();
    let budget = Budget {
        max_generators: 3,
        ..Budget::default()
    };
    let mut actions_checked = 0usize;
    for (name, g) in fixtures::graph_library() {
        if g.edge_count() > 6 {
            continue;
        }
        let (pres, _, _) = cover::pi1_graph(&g, 0).unwrap();
        for d in 1..=5usize {
            for (a, transitive) in fpgroup::enumerate_actions(&pres, d, &budget).unwrap() {
                let c = cover::cover_from_action(&g, 0, &a).unwrap();
                let (back, _) = cover::monodromy(&c, 0).unwrap();
                assert_eq!(back, a, "{name}: monodromy round trip broke at degree {d}");
                // component/orbit correspondence
                let mut orbit_sizes: Vec<usize> = a.orbits().iter().map(|o| o.len()).collect();
                orbit_sizes.sort_unstable();
                let mut comp_fibers: Vec<usize> = c
                    .total
                    .components()
                    .iter()
                    .map(|comp| comp.iter().filter(|&&v| c.map.vmap[v] == 0).count())
                    .collect();
                comp_fibers.sort_unstable();
                assert_eq!(
                    orbit_sizes, comp_fibers,
                    "{name}: orbit/component mismatch at degree {d}"
                );
                // reverse round trip on connected covers, after relabeling
                if transitive && d <= 3 {
                    let shuffled = relabel_cover(&c);
                    let (again, _) = cover::monodromy(&shuffled, 0).unwrap();
                    let rebuilt = cover::cover_from_action(&g, 0, &again).unwrap();
                    assert!(
                        cover::find_cover_isomorphism(&shuffled, &rebuilt).is_some(),
                        "{name}: rebuilt cover not isomorphic at degree {d}"
                    );
                }
                actions_checked += 1;
            }
        }
    }
    // the wedge of two loops: 3 transitive double covers, tower level 2 of
    // order 4
    let wedge = fixtures::graph_by_name("wedge2");
    let (pres, _, _) = cover::pi1_graph(&wedge, 0).unwrap();
    let transitive_count = fpgroup::enumerate_actions(&pres, 2, &budget)
        .unwrap()
        .into_iter()
        .filter(|(_, t)| *t)
        .count();
    assert_eq!(transitive_count, 3);
    let sys = cover::pi1_inverse_system(&wedge, 0, 2, &budget).unwrap();
    assert_eq!(sys.level_groups[1].order(), 4);
    assert!(groupoid::validate_chain(&sys.chain).is_ok());
    report(
        5,
        "cover/monodromy equivalence",
        true,
        &format!("{actions_checked} actions round-tripped; wedge counts as stated"),
        started,
        60,
    );
}

/// Does the monodromy of `f` factor through the trivialization quotient of
/// `u`? Checked by closing the joint image in `G_R × Sym(fiber F)`: the
/// monodromy factors exactly when the joint subgroup projects bijectively
/// onto `G_R`, i.e. has the same order.
fn factors_through(q: &cover::TrivializationQuotient, f_action: &FiniteAction) -> bool {
    let joint_gens: Vec<(usize, Perm)> = (0..f_action.images.len())
        .map(|i| (q.projection[i], f_action.images[i].clone()))
        .collect();
    let identity = (0usize, Perm::identity(f_action.degree));
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some((e, p)) = frontier.pop() {
        for (ge, gp) in &joint_gens {
            let n = (q.group.mul(e, *ge), p.then(gp));
            if seen.insert(n.clone()) {
                frontier.push(n);
            }
        }
    }
    seen.len() == q.group.order()
}

/// Criterion 6: trivialization via the pullback definition agrees with
/// factoring through the trivialization quotient, for all connected U of
/// degree ≤ 4 and all F of degree ≤ 4 over the small fixture graphs.
#[test]
fn acceptance_6_trivialization_quotient() {
    let started = Instant::now();
    let budget = Budget::with_generators(3);
    let mut pairs = 0usize;
    for (name, g) in fixtures::graph_library() {
        if g.edge_count() > 4 {
            continue;
        }
        let (pres, _, _) = cover::pi1_graph(&g, 0).unwrap();
        let mut us = Vec::new();
        let mut fs = Vec::new();
        for d in 1..=4usize {
            for a in fpgroup::transitive_classes(&pres, d, &budget).unwrap() {
                us.push(cover::cover_from_action(&g, 0, &a).unwrap());
            }
            let mut class_set = std::collections::BTreeSet::new();
            for (a, _) in fpgroup::enumerate_actions(&pres, d, &budget).unwrap() {
                class_set.insert(a.canonical_form());
            }
            for a in class_set {
                fs.push((cover::cover_from_action(&g, 0, &a).unwrap(), a));
            }
        }
        for u in &us {
            let q = cover::trivialization_quotient(u, 0, &budget).unwrap();
            for (f, fa) in &fs {
                let triv = cover::is_trivialized_by(f, u).unwrap();
                assert!(
                    triv.agree,
                    "{name}: pullback and monodromy routes disagree"
                );
                assert_eq!(
                    triv.pullback_splits,
                    factors_through(&q, fa),
                    "{name}: trivialization vs quotient factoring mismatch"
                );
                pairs += 1;
            }
        }
    }
    report(
        6,
        "trivialization quotient",
        true,
        &format!("{pairs} (U, F) pairs checked against both routes"),
        started,
        60,
    );
}

/// Criterion 7: the canonical Galois object of every fixture action
/// validates, is Galois, and has automorphism group isomorphic to G.
#[test]
fn acceptance_7_canonical_galois_object() {
    let started = Instant::now();
    let budget = Budget::default();
    let mut checked = 0usize;
    for (name, a) in fixtures::action_library() {
        assert!(a.group.order() <= 6 && a.space.vertex_count() <= 4, "{name}");
        let c = orbifold::canonical_galois_cover(&a);
        assert!(
            orbifold::validate_equivariant_cover(&a, &c).is_ok(),
            "{name}: canonical cover fails validation"
        );
        assert_eq!(c.cover.degree_over(0), a.group.order(), "{name}: degree");
        assert!(
            orbifold::is_groupoid_connected(&c),
            "{name}: canonical cover not connected"
        );
        assert!(
            orbifold::is_galois_equivariant(&a, &c, &budget).unwrap(),
            "{name}: canonical cover not Galois"
        );
        let aut = orbifold::equivariant_aut(&a, &c, &budget).unwrap();
        assert!(
            group::find_isomorphism(&aut.group, &a.group).is_some(),
            "{name}: Aut not isomorphic to G"
        );
        checked += 1;
    }
    report(
        7,
        "canonical Galois object",
        true,
        &format!("{checked} fixture actions certified"),
        started,
        30,
    );
}

/// Criterion 8: the orbifold exact sequence — E1/E2 on every fixture
/// action, E3 for |G| ≤ 4 at degrees ≤ 3, and quotient-graph agreement for
/// free actions.
#[test]
fn acceptance_8_orbifold_exact_sequence() {
    let started = Instant::now();
    let budget = Budget::default();
    let mut e12 = 0usize;
    let mut e3 = 0usize;
    for (name, a) in fixtures::action_library() {
        let cap = if a.group.order() <= 4 { 3 } else { 0 };
        let report_ = orbifold::quotient_exact_sequence(&a, 0, cap, &budget).unwrap();
        assert!(report_.relators_die, "{name}: a relator survives labeling");
        assert!(report_.e1_surjective, "{name}: labeling not surjective");
        assert!(report_.e2_trivial, "{name}: π₁X image labels nontrivial");
        e12 += 1;
        for row in &report_.e3 {
            assert!(
                row.ok(),
                "{name}: E3 mismatch at degree {}: {row:?}",
                row.degree
            );
            e3 += 1;
        }
    }
    // free actions: orbifold invariants match the quotient graph
    let spectrum_budget = Budget::with_generators(16);
    for name in ["z2-rotate-cycle4", "z3-rotate-cycle3", "z2-antipode-cycle2"] {
        let a = fixtures::action_by_name(name);
        let data = orbifold::orbifold_pi1(&a, 0).unwrap();
        let (q, _) = a.quotient_graph().unwrap();
        let (qp, _, _) = cover::pi1_graph(&q, 0).unwrap();
        assert_eq!(
            fpgroup::abelianization(&data.presentation),
            fpgroup::abelianization(&qp),
            "{name}: abelianization mismatch"
        );
        assert_eq!(
            fpgroup::quotient_spectrum(&data.presentation, 4, &spectrum_budget).unwrap(),
            fpgroup::quotient_spectrum(&qp, 4, &spectrum_budget).unwrap(),
            "{name}: spectrum mismatch"
        );
    }
    report(
        8,
        "orbifold exact sequence",
        true,
        &format!("E1/E2 on {e12} actions; {e3} E3 rows; free actions match quotients"),
        started,
        300,
    );
}

/// Criterion 9: the fundamental-group comparison via Čech nerves holds for
/// every connected cover class of degree ≤ 4 over graphs with ≤ 4 edges;
/// nerves are hypercoverings; the skeleton/coskeleton adjunction holds on
/// the enumerated small suite.
#[test]
fn acceptance_9_simplicial_comparison() {
    let started = Instant::now();
    let budget = Budget::with_generators(3);
    let mut covers = 0usize;
    for (name, g) in fixtures::graph_library() {
        if g.edge_count() > 4 {
            continue;
        }
        let (pres, _, _) = cover::pi1_graph(&g, 0).unwrap();
        for d in 1..=4usize {
            for a in fpgroup::transitive_classes(&pres, d, &budget).unwrap() {
                let c = cover::cover_from_action(&g, 0, &a).unwrap();
                let r = simplicial::prop53_check(&c, 0, 4, &budget).unwrap();
                assert!(r.hypercovering_ok, "{name}: nerve not a hypercovering");
                assert!(
                    r.matches(),
                    "{name}: comparison failed at degree {d}: {r:?}"
                );
                covers += 1;
            }
        }
    }
    // skeleton/coskeleton adjunction on the small instance suite
    let mut adjunction_pairs = 0usize;
    let instances = vec![
        simplicial::TruncatedSimplicialSet::point(2),
        simplicial::nerve_of_group(&group::cyclic(2), 2),
        simplicial::nerve_of_group(&group::cyclic(3), 2),
        simplicial::coskeleton(&discrete_points(2, 2), 0).unwrap(),
        discrete_points(3, 2),
    ];
    for s in &instances {
        for t in &instances {
            for m in 0..=2usize {
                let left = simplicial::simplicial_maps(&simplicial::skeleton(s, m).unwrap(), t);
                let right = simplicial::simplicial_maps(s, &simplicial::coskeleton(t, m).unwrap());
                assert_eq!(left.len(), right.len(), "adjunction count at m={m}");
                let cut = |maps: &Vec<Vec<Vec<usize>>>| -> std::collections::BTreeSet<_> {
                    maps.iter().map(|f| f[..=m].to_vec()).collect()
                };
                assert_eq!(cut(&left), cut(&right), "adjunction bijection at m={m}");
                adjunction_pairs += 1;
            }
        }
    }
    report(
        9,
        "simplicial comparison",
        true,
        &format!("{covers} covers compared; {adjunction_pairs} adjunction instances"),
        started,
        120,
    );
}

fn discrete_points(n: usize, trunc: usize) -> simplicial::TruncatedSimplicialSet {
    let sizes = vec![n; trunc + 1];
    let faces = (1..=trunc)
        .map(|k| vec![(0..n).collect::<Vec<usize>>(); k + 1])
        .collect();
    let degens = (0..trunc)
        .map(|k| vec![(0..n).collect::<Vec<usize>>(); k + 1])
        .collect();
    simplicial::TruncatedSimplicialSet::new(sizes, faces, degens).unwrap()
}
