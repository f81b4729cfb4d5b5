//! Worked examples per module, on hand-built inputs.

mod common;

use std::collections::BTreeSet;

use num_rational::Rational64;
use sethom::casesolver::{realization_table, realized_labels, s_labels, solve_cover, Label};
use sethom::census::{census_orbit_unions, example52, fano_plane};
use sethom::edges::{complement, derive_edges, edge_distribution, Carrier, Family, HypergraphDoc, KHypergraph};
use sethom::groups::{classify_action, close_group, named_group, orbits_on_subsets, Permutation, MAX_ORDER};
use sethom::homtest::{
    all_hypergraphs_up_to, automorphism_group, check_tap, find_isomorphism, homogeneity_report, substructure_class,
    tournament_forcing_search_with, RelKind, StructuredSet, TapMode,
};
use sethom::relstruct::{
    betweenness, c_from_d, check_c_axioms, check_d_axioms, circular, d_from_c, degenerate_d, separation, CAxiom, DAxiom,
    FinOrder, QuaternaryRel, TernaryRel,
};
use sethom::treelike::{
    build_leaf_tree, c_of_leaves, d_of_leaves, induced_topology, random_rooted, random_unrooted, CircleConfig, Topology,
    UnrootedDoc, UnrootedLeafTree,
};
use sethom::RationalCircle;

fn tree(text: &str) -> sethom::treelike::LeafTree {
    build_leaf_tree(text, None).unwrap()
}

fn circle(ps: &[&str]) -> RationalCircle {
    CircleConfig::new(ps.iter().map(|p| common::rational(p)).collect()).unwrap()
}

mod relstruct {
    use super::*;

    #[test]
    fn derived_order_relations() {
        let o = FinOrder::natural(4);
        let b = betweenness(&o);
        assert!(b.holds([1, 0, 2]) && !b.holds([0, 1, 2]));
        let k = circular(&o);
        assert!(k.holds([1, 2, 0]) && !k.holds([0, 2, 1]));
        let s = separation(&o);
        assert!(s.holds([0, 2, 1, 3]) && !s.holds([0, 1, 2, 3]));
    }

    #[test]
    fn two_point_c4() {
        let c = TernaryRel::from_fn(2, |[x, y, z]| x != y && y == z);
        let r = check_c_axioms(&c, &[CAxiom::C4], None).unwrap();
        assert!(r[0].passed());
    }

    #[test]
    fn degenerate_only_d() {
        let d = QuaternaryRel::from_fn(5, |[x, y, z, w]| degenerate_d(x, y, z, w));
        assert!(check_d_axioms(&d, &DAxiom::UNIVERSAL).iter().all(|r| r.passed()));
    }

    #[test]
    fn d_from_two_cherries() {
        let (c, _) = c_of_leaves(&tree("((x,y),(z,w))"));
        let d = d_from_c(&c).unwrap();
        assert!(d.holds([0, 1, 2, 3]));
        assert!(!d.holds([0, 2, 1, 3]));
    }

    #[test]
    fn c_from_split_quartet() {
        let q = UnrootedLeafTree::from_edges(4, 6, &[[0, 4], [1, 4], [4, 5], [2, 5], [3, 5]]).unwrap();
        let d = d_of_leaves(&q);
        let (cx, rest) = c_from_d(&d, 0).unwrap();
        let at = |v: usize| rest.iter().position(|&r| r == v).unwrap();
        assert!(cx.holds([at(1), at(2), at(3)]));
        let (cz, rest) = c_from_d(&d, 2).unwrap();
        let at = |v: usize| rest.iter().position(|&r| r == v).unwrap();
        assert!(cz.holds([at(3), at(0), at(1)]));
    }
}

mod treelike {
    use super::*;

    #[test]
    fn parse_shapes() {
        let t = tree("((a,b),(c,d))");
        assert_eq!((t.n_leaves(), t.internal_count()), (4, 3));
        assert_eq!(t.names(), ["a", "b", "c", "d"]);
        let cat = tree("(a,(b,(c,d)))");
        assert_eq!(cat.n_leaves(), 4);
        assert_eq!(cat.to_text(), "(0,(1,(2,3)))");
        assert!(build_leaf_tree("((a),(b))", None).is_err());
    }

    #[test]
    fn caterpillar_c() {
        let (c, _) = c_of_leaves(&tree("(a,(b,(c,d)))"));
        assert!(c.holds([0, 2, 3]));
        assert!(!c.holds([2, 0, 1]));
    }

    #[test]
    fn quartet_d() {
        let split = UnrootedLeafTree::from_edges(4, 6, &[[0, 4], [1, 4], [4, 5], [2, 5], [3, 5]]).unwrap();
        let d = d_of_leaves(&split);
        assert!(d.holds([0, 1, 2, 3]) && !d.holds([0, 2, 1, 3]));
        let star = UnrootedLeafTree::from_edges(4, 5, &[[0, 4], [1, 4], [2, 4], [3, 4]]).unwrap();
        let d = d_of_leaves(&star);
        assert!(!d.holds([0, 1, 2, 3]) && !d.holds([0, 2, 1, 3]) && !d.holds([0, 3, 1, 2]));
        assert_eq!(induced_topology(&split, &[0, 1, 2, 3]).unwrap(), Topology::Split { pairs: [[0, 1], [2, 3]] });
    }

    #[test]
    fn random_fragment_contracts() {
        let a = random_rooted(8, 2, false, 7).unwrap();
        assert_eq!(a.to_text(), random_rooted(8, 2, false, 7).unwrap().to_text());
        for seed in 0..5 {
            assert_eq!(random_rooted(8, 2, false, seed).unwrap().internal_count(), 7);
        }
        let u = random_unrooted(12, 3, true, 3).unwrap();
        assert!(u.internal_degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn circle_tournaments() {
        let z = circle(&["0", "3/10", "6/10"]);
        let t = z.tournament();
        assert!(t.arc(0, 1) && t.arc(1, 2) && t.arc(2, 0));
        let z = circle(&["0", "1/10", "2/10"]);
        let t = z.tournament();
        assert!(t.arc(0, 1) && t.arc(1, 2) && t.arc(0, 2));
        assert!(CircleConfig::new(vec![Rational64::new(1, 10), Rational64::new(6, 10)]).is_err());
    }

    #[test]
    fn sextet_shapes() {
        let (cat, snow) = common::sextet_pair();
        let all: Vec<usize> = (0..6).collect();
        assert!(induced_topology(&cat, &all).unwrap().is_caterpillar());
        assert!(matches!(induced_topology(&snow, &all).unwrap(), Topology::Snowflake { .. }));
        let doc: UnrootedDoc = serde_json::from_str(&common::fixture("caterpillar6.json")).unwrap();
        let cat6 = UnrootedLeafTree::from_doc(&doc).unwrap();
        assert!(induced_topology(&cat6, &all).unwrap().is_caterpillar());
    }
}

mod edges {
    use super::*;

    #[test]
    fn m3_small_trees() {
        let h = derive_edges(Family::M3, Carrier::Rooted(&tree("((a,b),(c,d))"))).unwrap();
        assert_eq!(h.sorted_edges(), vec![vec![0, 2, 3], vec![1, 2, 3]]);
        assert_eq!(derive_edges(Family::M3, Carrier::Rooted(&tree("(((a,b),c),d)"))).unwrap().edge_count(), 0);
        assert_eq!(derive_edges(Family::M3, Carrier::Rooted(&tree("(a,(b,(c,d)))"))).unwrap().edge_count(), 4);
    }

    #[test]
    fn n3_four_points() {
        let z = circle(&["0", "3/20", "3/10", "3/5"]);
        let h = derive_edges(Family::N3, Carrier::Circle(&z)).unwrap();
        assert_eq!(h.sorted_edges(), vec![vec![0, 1, 2], vec![1, 2, 3]]);
        for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert_eq!(h.contains(&t), common::half_circle_oracle(&z.to_doc(), t));
        }
    }

    #[test]
    fn single_edge_shapes() {
        let h = derive_edges(Family::M4, Carrier::Rooted(&tree("((x1,x2),(y1,y2))"))).unwrap();
        assert_eq!(h.edge_count(), 1);
        let doc: UnrootedDoc = serde_json::from_str(&common::fixture("caterpillar6.json")).unwrap();
        let cat6 = UnrootedLeafTree::from_doc(&doc).unwrap();
        assert_eq!(derive_edges(Family::M6, Carrier::Unrooted(&cat6)).unwrap().edge_count(), 1);
    }

    #[test]
    fn complements() {
        let k5 = KHypergraph::complete(5, 3).unwrap();
        assert_eq!(complement(&k5).edge_count(), 0);
        assert_eq!(edge_distribution(&k5, 4).unwrap().into_iter().collect::<Vec<_>>(), vec![(4, 5)]);
        let m = example52().unwrap();
        assert_eq!(complement(&m).edge_count(), 21);
        assert_eq!(complement(&complement(&m)), m);
    }

    #[test]
    fn m3_distribution_support() {
        let mut full = 0;
        for seed in 0..10 {
            let t = random_rooted(12, 2, false, seed).unwrap();
            let h = derive_edges(Family::M3, Carrier::Rooted(&t)).unwrap();
            let support: Vec<usize> = edge_distribution(&h, 4).unwrap().into_keys().collect();
            assert!(support.iter().all(|&c| c <= 4));
            full += usize::from(support == [0, 1, 2, 3, 4]);
        }
        assert!(full > 0);
    }
}

mod groups {
    use super::*;

    #[test]
    fn closures() {
        let g = close_group(
            7,
            &[Permutation::from_fn(7, |x| (x + 1) % 7).unwrap(), Permutation::from_fn(7, |x| 3 * x % 7).unwrap()],
            MAX_ORDER,
        )
        .unwrap();
        assert_eq!(g.order(), 42);
        let d5 = close_group(
            5,
            &[Permutation::from_fn(5, |x| (x + 1) % 5).unwrap(), Permutation::from_fn(5, |x| (5 - x) % 5).unwrap()],
            MAX_ORDER,
        )
        .unwrap();
        assert_eq!(d5.order(), 10);
        for (name, degree, order) in [("agl1(7)", 7, 42), ("psl3(2)", 7, 168), ("dihedral(5)", 5, 10)] {
            let g = named_group(name).unwrap();
            assert_eq!((g.degree(), g.order()), (degree, order), "{name}");
        }
    }

    #[test]
    fn agl_orbits() {
        let g = named_group("agl1(7)").unwrap();
        let o3 = orbits_on_subsets(&g, 3).unwrap();
        let small = o3.iter().find(|o| o.len() == 14).unwrap();
        assert!(small.contains(&0b1011) && small.contains(&0b1000101));
        let o4 = orbits_on_subsets(&g, 4).unwrap();
        let sizes: BTreeSet<usize> = o4.iter().map(Vec::len).collect();
        assert_eq!(sizes, BTreeSet::from([14, 21]));
        let comp: BTreeSet<u64> = small.iter().map(|m| !m & 0x7f).collect();
        let four14: BTreeSet<u64> = o4.iter().find(|o| o.len() == 14).unwrap().iter().copied().collect();
        assert_eq!(comp, four14);
        let s7 = named_group("sym(7)").unwrap();
        assert_eq!(orbits_on_subsets(&s7, 3).unwrap().iter().map(Vec::len).collect::<Vec<_>>(), vec![35]);
    }

    #[test]
    fn action_profiles() {
        let p = classify_action(&named_group("agl1(7)").unwrap()).unwrap();
        assert!(p.is_k_transitive(2) && !p.is_k_transitive(3));
        assert_eq!(p.subset_orbit_counts[&3], 2);
        let d4 = classify_action(&named_group("dihedral(4)").unwrap()).unwrap();
        assert!(d4.is_k_transitive(1) && !d4.primitive);
        for n in 3..=6 {
            let s = classify_action(&named_group(&format!("sym({n})")).unwrap()).unwrap();
            assert_eq!(s.transitivity_degree, n);
            assert!(s.primitive);
        }
    }
}

mod homtest {
    use super::*;

    #[test]
    fn example52_four_sets() {
        let m = example52().unwrap();
        let a = m.induced(&[3, 4, 5, 6]);
        let b = m.induced(&[2, 4, 5, 6]);
        assert_eq!(m.induced(&[3, 4, 5, 6]).edge_count(), 2);
        assert!(m.contains(&[3, 4, 6]) && m.contains(&[3, 5, 6]) && m.contains(&[2, 4, 5]));
        let found = find_isomorphism(&StructuredSet::new(a), &StructuredSet::new(b), &[RelKind::Edges]).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn relabelled_copy_is_isomorphic() {
        let m = example52().unwrap();
        let image = [3, 6, 0, 5, 1, 4, 2];
        let r = m.relabel(&image);
        let f = find_isomorphism(&StructuredSet::new(m), &StructuredSet::new(r), &[RelKind::Edges]).unwrap();
        assert!(f.is_some());
    }

    #[test]
    fn automorphism_orders() {
        let fano = fano_plane().unwrap();
        assert_eq!(automorphism_group(&StructuredSet::new(fano), &[RelKind::Edges]).unwrap().order(), 168);
        let null = KHypergraph::empty(5, 3).unwrap();
        assert_eq!(automorphism_group(&StructuredSet::new(null), &[RelKind::Edges]).unwrap().order(), 120);
        let pentagon = circle(&["0", "1/5", "2/5", "3/5", "4/5"]);
        let h = derive_edges(Family::N3, Carrier::Circle(&pentagon)).unwrap();
        assert_eq!(automorphism_group(&StructuredSet::new(h), &[RelKind::Edges]).unwrap().order(), 10);
    }

    #[test]
    fn homogeneity_flags() {
        let m = homogeneity_report(&example52().unwrap()).unwrap();
        assert!(m.set_homogeneous && !m.homogeneous && m.certificate.is_some());
        let f = homogeneity_report(&fano_plane().unwrap()).unwrap();
        assert!(f.set_homogeneous && f.homogeneous);
        for h in [KHypergraph::complete(6, 3).unwrap(), KHypergraph::empty(6, 3).unwrap()] {
            let r = homogeneity_report(&h).unwrap();
            assert!(r.set_homogeneous && r.homogeneous);
        }
    }

    #[test]
    fn tap_classes() {
        let all = all_hypergraphs_up_to(4, 3).unwrap();
        let r = check_tap(&all, TapMode::Bounded).unwrap();
        assert!(r.holds && r.verify(&all));
        let tiny = vec![KHypergraph::empty(1, 3).unwrap(), KHypergraph::empty(2, 3).unwrap()];
        assert!(check_tap(&tiny, TapMode::Strict).unwrap().holds);
        let sub = substructure_class(&example52().unwrap(), 4).unwrap();
        let r = check_tap(&sub, TapMode::Bounded).unwrap();
        assert!(r.verify(&sub));
    }

    #[test]
    fn unconstrained_tournament_has_model() {
        let out = tournament_forcing_search_with(false);
        assert!(!out.is_unsat());
    }

    #[test]
    fn sextet_pair_complete_but_distinct() {
        let (cat, snow) = common::sextet_pair();
        let ha = derive_edges(Family::N4, Carrier::Unrooted(&cat)).unwrap();
        let hb = derive_edges(Family::N4, Carrier::Unrooted(&snow)).unwrap();
        assert!(common::brute_isomorphic(&ha, &hb));
        let a = StructuredSet::new(ha).with_d(d_of_leaves(&cat)).unwrap();
        let b = StructuredSet::new(hb).with_d(d_of_leaves(&snow)).unwrap();
        assert!(find_isomorphism(&a, &b, &[RelKind::Edges, RelKind::D]).unwrap().is_none());
    }
}

mod casesolver {
    use super::*;

    fn row_s(k: usize, name: &str) -> BTreeSet<Label> {
        let t = realization_table(k).unwrap();
        let row = t.rows.iter().find(|r| r.name() == name).unwrap();
        row.realized.iter().copied().collect()
    }

    #[test]
    fn realized_rows() {
        assert_eq!(
            realized_labels(1, &[1, 2, 3, 4], 4).unwrap(),
            BTreeSet::from([Label::T(4), Label::S(5, 1), Label::S(5, 2), Label::S(5, 3)])
        );
        assert_eq!(
            realized_labels(2, &[1, 2], 3).unwrap(),
            BTreeSet::from([Label::T(2), Label::S(3, 1), Label::S(4, 1), Label::S(4, 2)])
        );
        assert_eq!(realized_labels(3, &[4], 3).unwrap(), BTreeSet::from([Label::T(3), Label::S(1, 4), Label::S(2, 4)]));
    }

    #[test]
    fn table_rows() {
        let s: BTreeSet<Label> = row_s(3, "P1_234").into_iter().filter(|l| matches!(l, Label::S(..))).collect();
        assert_eq!(s, BTreeSet::from([Label::S(1, 3), Label::S(1, 4)]));
        assert_eq!(
            row_s(4, "P2_135"),
            BTreeSet::from([Label::T(1), Label::T(2), Label::T(3), Label::T(4), Label::S(4, 1), Label::S(2, 5)])
        );
    }

    #[test]
    fn reversal_exchanges_lemma_cases() {
        let sols = solve_cover(3, &s_labels(3).into_iter().collect()).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0].reversed(3), sols[1]);
    }

    #[test]
    fn empty_requirement_admits_everything() {
        let all = solve_cover(3, &BTreeSet::new()).unwrap();
        assert!(all.iter().any(|a| a.choices.iter().all(Option::is_none)));
        assert!(all.len() > 2);
    }
}

mod census {
    use super::*;

    #[test]
    fn example52_fixture_matches() {
        let doc: HypergraphDoc = serde_json::from_str(&common::fixture("example52.json")).unwrap();
        assert_eq!(KHypergraph::from_doc(&doc).unwrap(), example52().unwrap());
    }

    #[test]
    fn m_entry() {
        let entries = census_orbit_unions(7, 3).unwrap();
        let m = entries.iter().find(|e| e.edges == 14).unwrap();
        assert_eq!(m.group, "agl1(7)");
        assert!(m.set_homogeneous && !m.homogeneous && m.verified);
        assert_eq!(m.aut_order, 42);
    }

    #[test]
    fn closed_under_complement_and_pairwise_distinct() {
        for n in [6, 7] {
            let entries = census_orbit_unions(n, 3).unwrap();
            let graphs: Vec<KHypergraph> = entries.iter().map(|e| e.hypergraph().unwrap()).collect();
            for (i, e) in entries.iter().enumerate() {
                assert!(e.verified && (!e.homogeneous || e.set_homogeneous));
                let c = complement(&graphs[i]);
                let twin = graphs.iter().position(|g| common::brute_isomorphic(g, &c)).expect("complement listed");
                assert_eq!((entries[twin].set_homogeneous, entries[twin].homogeneous), (e.set_homogeneous, e.homogeneous));
                for g in &graphs[i + 1..] {
                    let iso = find_isomorphism(&StructuredSet::new(graphs[i].clone()), &StructuredSet::new(g.clone()), &[RelKind::Edges]);
                    assert!(iso.unwrap().is_none());
                }
            }
        }
    }
}
