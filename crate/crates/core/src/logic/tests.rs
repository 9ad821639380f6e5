use super::*;
use crate::graph::generators::*;
use crate::graph::{ColoredGraph, Graph};

fn cg(g: Graph) -> ColoredGraph {
    ColoredGraph::from(g)
}

fn p(text: &str) -> Formula {
    parse_formula(text).unwrap()
}

#[test]
fn parse_examples() {
    assert_eq!(p("E(x,y)"), Formula::edge("x", "y"));
    assert_eq!(
        p("exists z (E(x,z) & E(y,z))"),
        Formula::exists("z", Formula::edge("x", "z").and(Formula::edge("y", "z")))
    );
    assert_eq!(p("dist(x,y) <= 2"), Formula::dist_le("x", "y", 2));
}

#[test]
fn parse_precedence() {
    // ! > & > | > -> > <->
    let f = p("!A(x) & B(x) | C(x) -> D(x) <-> F(x)");
    let a = Formula::pred("A", "x").not().and(Formula::pred("B", "x"));
    let expected = a.or(Formula::pred("C", "x")).implies(Formula::pred("D", "x")).iff(Formula::pred("F", "x"));
    assert_eq!(f, expected);
    assert_eq!(p("x != y"), Formula::neq("x", "y"));
    assert_eq!(p("not x = y"), Formula::neq("x", "y"));
    // Implication associates to the right.
    assert_eq!(p("A(x) -> B(x) -> C(x)"), Formula::pred("A", "x").implies(Formula::pred("B", "x").implies(Formula::pred("C", "x"))));
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_with_free("E(x,w)", &["x"]), Err(Error::UnboundVariable(v)) if v == "w"));
    assert!(matches!(parse_formula("dist(x,y) <= z"), Err(Error::Parse { .. })));
    assert!(matches!(parse_formula("dist(x,y) <= -1"), Err(Error::Parse { .. })));
    assert!(matches!(parse_formula("exists z exists z E(z,z)"), Err(Error::Shadowing(_))));
    assert!(matches!(parse_with_free("exists x E(x,x)", &["x"]), Err(Error::Shadowing(_))));
    match parse_formula("E(x,y) &") {
        Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
        other => panic!("{other:?}"),
    }
    assert!(parse_formula("E(x,y) )").is_err());
    assert!(parse_formula("x # y").is_err());
}

#[test]
fn display_round_trips() {
    for text in [
        "exists z (E(x,z) & E(y,z))",
        "!exists z (dist(x,z) <= 2 & E(x,z))",
        "forall a (M(a) -> (a = x | a != y))",
        "(true <-> false) | !(dist(x,y) <= 0)",
        "exists z !E(x,z)",
    ] {
        let f = p(text);
        assert_eq!(p(&f.to_string()), f, "{text} printed as {f}");
    }
}

#[test]
fn evaluate_examples() {
    let k2 = cg(complete(2));
    assert!(evaluate(&k2, &p("E(x,y)"), &assign(&[("x", 0), ("y", 1)])).unwrap());
    let p3 = cg(path(3));
    assert!(evaluate(&p3, &p("exists z (E(x,z) & E(y,z))"), &assign(&[("x", 0), ("y", 2)])).unwrap());
    let two = cg(Graph::edgeless(2));
    assert!(!evaluate(&two, &p("dist(x,y) <= 3"), &assign(&[("x", 0), ("y", 1)])).unwrap());
    assert!(evaluate(&two, &p("dist(x,x) <= 0"), &assign(&[("x", 1)])).unwrap());
}

#[test]
fn evaluate_missing_assignment() {
    let g = cg(path(2));
    assert_eq!(evaluate(&g, &p("E(x,y)"), &assign(&[("x", 0)])), Err(Error::MissingAssignment("y".into())));
}

#[test]
fn missing_color_is_empty() {
    let g = cg(path(2));
    assert!(!evaluate(&g, &p("exists z M(z)"), &assign(&[])).unwrap());
    let g = g.with_color("M", [1]).unwrap();
    assert!(evaluate(&g, &p("exists z M(z)"), &assign(&[])).unwrap());
}

#[test]
fn free_and_bound_name_in_separate_branches() {
    // `x` is free on the left and bound on the right.
    let g = cg(path(3));
    let f = p("M(x) | (E(x,y) & exists z (z = z)) ");
    assert!(evaluate(&g, &f, &assign(&[("x", 0), ("y", 1)])).unwrap());
    let tricky = Formula::edge("x", "y").and(Formula::exists("x", Formula::True)).and(Formula::edge("x", "y"));
    assert!(evaluate(&g, &tricky, &assign(&[("x", 0), ("y", 1)])).unwrap());
}

#[test]
fn rank_examples() {
    assert_eq!(p("E(x,y)").quantifier_rank(), 0);
    assert_eq!(p("exists z (E(x,z) & E(y,z))").quantifier_rank(), 1);
    assert_eq!(p("exists z exists w (E(z,w))").quantifier_rank(), 2);
    assert_eq!(p("dist(x,y) <= 5").quantifier_rank(), 0);
}

#[test]
fn localize_examples() {
    assert_eq!(p("exists z E(x,z)").t_localize(1).unwrap(), p("exists z (dist(x,z)<=1 & E(x,z))"));
    let qf = p("M(x) & !N(x)");
    assert_eq!(qf.t_localize(3).unwrap(), qf);
    assert_eq!(p("not exists z E(x,z)").t_localize(2).unwrap(), p("not exists z (dist(x,z)<=2 & E(x,z))"));
    assert!(p("E(x,y)").t_localize(1).is_err());
    let f = p("forall z (E(x,z) -> M(z))");
    assert_eq!(f.t_localize(2).unwrap(), p("forall z (dist(x,z) <= 2 -> (E(x,z) -> M(z)))"));
}

#[test]
fn locality_examples() {
    let family: Vec<ColoredGraph> = vec![cg(path(4)), cg(cycle(5)), cg(Graph::edgeless(2)), cg(star(3))];
    assert!(check_r_local(&p("E(x,y)"), &family, 1).unwrap().holds);
    let f = p("exists z !(dist(x,z) <= 0)");
    let report = check_r_local(&f, &[cg(complete(1)), cg(Graph::edgeless(2))], 0).unwrap();
    assert!(!report.holds);
    assert_eq!(report.counterexample.unwrap().0, 1);
    let phi = p("exists z exists w (E(x,z) & E(z,w) & w != x)");
    assert!(check_r_local(&phi.t_localize(2).unwrap(), &family, 2).unwrap().holds);
}

#[test]
fn strong_locality_examples() {
    let family = vec![cg(path(4)), cg(Graph::edgeless(2))];
    assert!(check_strongly_local(&p("E(x,y)"), &family, 1).unwrap().holds);
    assert!(!check_strongly_local(&p("x = x & y = y"), &family, 3).unwrap().holds);
    let f = p("dist(x,y)<=2 & (exists z (E(x,z)&E(z,y)))");
    assert!(check_strongly_local(&f, &family, 2).unwrap().holds);
}

#[test]
fn expansion_matches_primitive_exhaustively() {
    for n in 0..=5 {
        for g in all_graphs_up_to_iso(n) {
            let g = cg(g);
            for r in 0..=3 {
                let prim = Formula::dist_le("x", "y", r);
                let exp = prim.expand_distances();
                assert_eq!(exp.quantifier_rank(), r);
                for x in 0..n {
                    for y in 0..n {
                        let a = assign(&[("x", x), ("y", y)]);
                        assert_eq!(evaluate(&g, &prim, &a).unwrap(), evaluate(&g, &exp, &a).unwrap());
                    }
                }
            }
        }
    }
}

pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    /// Random formulas over `E`, `=`, colors `A`/`B` and optionally distance
    /// atoms. Bound variables are numbered by depth, so no shadowing occurs.
    pub fn formula(free: Vec<String>, depth: u32, with_dist: bool) -> BoxedStrategy<Formula> {
        fn go(vars: Vec<String>, depth: u32, with_dist: bool) -> BoxedStrategy<Formula> {
            let pick = proptest::sample::select(vars.clone());
            let pick2 = (pick.clone(), pick.clone());
            let mut atoms: Vec<BoxedStrategy<Formula>> = vec![
                Just(Formula::True).boxed(),
                pick2.clone().prop_map(|(a, b)| Formula::Edge(a, b)).boxed(),
                pick2.clone().prop_map(|(a, b)| Formula::Eq(a, b)).boxed(),
                (proptest::sample::select(vec!["A", "B"]), pick.clone()).prop_map(|(c, a)| Formula::Pred(c.into(), a)).boxed(),
            ];
            if with_dist {
                atoms.push((pick2, 0usize..3).prop_map(|((a, b), r)| Formula::DistLe(a, b, r)).boxed());
            }
            let leaf = proptest::strategy::Union::new(atoms).boxed();
            if depth == 0 {
                return leaf;
            }
            let bound = format!("q{depth}");
            let mut inner = vars.clone();
            inner.push(bound.clone());
            let sub = go(vars, depth - 1, with_dist);
            let quant = go(inner, depth - 1, with_dist);
            let b1 = bound.clone();
            prop_oneof![
                2 => leaf,
                1 => sub.clone().prop_map(Formula::not),
                1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| a.and(b)),
                1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| a.or(b)),
                1 => (sub.clone(), sub.clone()).prop_map(|(a, b)| a.implies(b)),
                1 => (sub.clone(), sub).prop_map(|(a, b)| a.iff(b)),
                2 => quant.clone().prop_map(move |f| Formula::exists(&b1, f)),
                2 => quant.prop_map(move |f| Formula::forall(&bound, f)),
            ]
            .boxed()
        }
        go(free, depth, with_dist)
    }

    pub fn colored_graph(max_n: usize) -> BoxedStrategy<ColoredGraph> {
        (1..=max_n)
            .prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (Just(n), 0..(1u64 << pairs), 0..(1u32 << n), 0..(1u32 << n))
            })
            .prop_map(|(n, bits, a, b)| {
                let pick = |m: u32| (0..n).filter(move |v| m >> v & 1 == 1);
                ColoredGraph::from(from_bits(n, bits)).with_color("A", pick(a)).unwrap().with_color("B", pick(b)).unwrap()
            })
            .boxed()
    }
}

mod props {
    use super::strategies::*;
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn nnf_preserves_truth(f in formula(vec!["x".into()], 4, true), g in colored_graph(5), x in 0usize..5) {
            prop_assume!(x < g.n());
            let f = Formula::eq("x", "x").and(f);
            let a = assign(&[("x", x)]);
            prop_assert_eq!(evaluate(&g, &f, &a).unwrap(), evaluate(&g, &f.nnf(), &a).unwrap());
        }

        #[test]
        fn display_parse_round_trip(f in formula(vec!["x".into(), "y".into()], 4, true)) {
            prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn localization_matches_ball(f in formula(vec!["x".into()], 3, false), g in colored_graph(7), t in 0usize..=2, u in 0usize..7) {
            prop_assume!(u < g.n());
            let f = Formula::eq("x", "x").and(f);
            let hat = f.t_localize(t).unwrap();
            prop_assert_eq!(hat.quantifier_rank(), f.quantifier_rank());
            prop_assert_eq!(hat.free_vars(), f.free_vars());
            let (ball, map) = g.ball(&[u].into(), t).unwrap();
            let local = map.binary_search(&u).unwrap();
            prop_assert_eq!(
                evaluate(&g, &hat, &assign(&[("x", u)])).unwrap(),
                evaluate(&ball, &f, &assign(&[("x", local)])).unwrap()
            );
        }
    }
}
