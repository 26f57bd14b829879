use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tashkinov::fixtures::{self, Fixture, FIG1_ALPHA, FIG3_ALPHA};
use tashkinov::format::{parse_colouring, parse_graph};
use tashkinov::kempe::{bichromatic_components, ComponentKind};
use tashkinov::witness::{
    derive_fig3, synthesize, verify, SynthOptions, SynthOutcome, WitnessSpec,
};
use tashkinov::{Colour, Error, PartialColouring};

fn spec(text: &str) -> WitnessSpec {
    WitnessSpec::parse(text).unwrap()
}

fn passes(f: &Fixture, s: &WitnessSpec) -> bool {
    verify(&f.graph, &f.labels, &f.colouring, s)
        .unwrap()
        .passed()
}

#[test]
fn shipped_fixtures_pass_their_specs() {
    assert!(passes(&fixtures::fig1(), &spec(fixtures::FIG1_SPEC)));
    assert!(passes(&fixtures::fig3(), &spec(fixtures::FIG3_SPEC)));
}

#[test]
fn specs_do_not_cross_over() {
    assert!(!passes(&fixtures::fig1(), &spec(fixtures::FIG3_SPEC)));
    assert!(!passes(&fixtures::fig3(), &spec(fixtures::FIG1_SPEC)));
}

#[test]
fn derived_graph_is_the_shipped_one() {
    let f = fixtures::fig1();
    let (h, hl, hc) = derive_fig3(&f.graph, &f.labels, &f.colouring).unwrap();
    let shipped = fixtures::fig3();
    assert_eq!(h.edges(), shipped.graph.edges());
    assert_eq!(hc, shipped.colouring);
    assert_eq!(
        (0..hl.len()).map(|v| hl.display(v)).collect::<Vec<_>>(),
        (0..shipped.labels.len())
            .map(|v| shipped.labels.display(v))
            .collect::<Vec<_>>()
    );
    assert!(verify(&h, &hl, &hc, &spec(fixtures::FIG3_SPEC))
        .unwrap()
        .passed());
}

fn kinds(c: &PartialColouring, f: &Fixture, a: Colour, b: Colour) -> (usize, usize) {
    let comps = bichromatic_components(c, &f.graph, a, b).unwrap();
    let paths = comps
        .iter()
        .filter(|x| x.kind == ComponentKind::Path)
        .count();
    let long = comps
        .iter()
        .filter(|x| x.kind == ComponentKind::Cycle)
        .count();
    (paths, long)
}

#[test]
fn derive_keeps_path_and_cycle_counts_of_old_pairs() {
    let f = fixtures::fig1();
    let h = fixtures::fig3();
    let lift = |c: Colour| if c == FIG1_ALPHA { FIG3_ALPHA } else { c };
    for a in 1..=FIG1_ALPHA {
        for b in a + 1..=FIG1_ALPHA {
            assert_eq!(
                kinds(&f.colouring, &f, a, b),
                kinds(&h.colouring, &h, lift(a), lift(b)),
                "pair {a} {b}"
            );
        }
    }
}

#[test]
fn derive_rejects_other_inputs() {
    let h = fixtures::fig3();
    assert!(matches!(
        derive_fig3(&h.graph, &h.labels, &h.colouring),
        Err(Error::Precondition(_))
    ));
}

/// Single-edge recolourings of `f`, proper ones first.
fn recolourings(f: &Fixture, count: usize, seed: u64) -> Vec<PartialColouring> {
    let (g, c) = (&f.graph, &f.colouring);
    let mut proper = Vec::new();
    let mut other = Vec::new();
    for e in 0..g.edge_count() {
        let Some(old) = c.colour(e) else { continue };
        let (u, v) = g.endpoints(e);
        let free = c.missing_at(g, u).intersection(c.missing_at(g, v));
        for new in (1..=c.k()).filter(|&x| x != old) {
            if free.contains(new) {
                proper.push((e, new))
            } else {
                other.push((e, new))
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = proper.clone();
    while picks.len() < count {
        picks.push(other.swap_remove(rng.gen_range(0..other.len())));
    }
    picks
        .into_iter()
        .take(count)
        .map(|(e, new)| {
            let mut m = c.clone();
            m.set(e, Some(new)).unwrap();
            m
        })
        .collect()
}

#[test]
fn twenty_recolourings_of_each_fixture_fail() {
    for (f, text) in [
        (fixtures::fig1(), fixtures::FIG1_SPEC),
        (fixtures::fig3(), fixtures::FIG3_SPEC),
    ] {
        let s = spec(text);
        for (i, m) in recolourings(&f, 20, 11).iter().enumerate() {
            let r = verify(&f.graph, &f.labels, m, &s).unwrap();
            assert!(!r.passed(), "{} mutant {i} passes", s.name);
        }
    }
}

#[test]
fn proper_recolourings_fail_beyond_properness() {
    let f = fixtures::fig1();
    let s = spec(fixtures::FIG1_SPEC);
    for m in recolourings(&f, 20, 3)
        .iter()
        .filter(|m| m.is_proper(&f.graph).unwrap())
    {
        let r = verify(&f.graph, &f.labels, m, &s).unwrap();
        assert!(r.failures().any(|c| c.name != "proper"));
    }
}

#[test]
fn moving_an_edge_breaks_the_edge_count_or_degree() {
    let f = fixtures::fig1();
    let text = fixtures::FIG1_GRAPH.replacen("edge 2 3", "edge 2 0", 1);
    let (g, labels) = parse_graph(&text).unwrap();
    let c = parse_colouring(fixtures::FIG1_COLOURING, &g).unwrap();
    assert_ne!(g.edges(), f.graph.edges());
    assert!(!verify(&g, &labels, &c, &spec(fixtures::FIG1_SPEC))
        .unwrap()
        .passed());
}

#[test]
fn malformed_specs_are_input_errors() {
    for bad in [
        "colours 3\nvertices a b\n[NOPE]\n",
        "colours 3\nvertices a b\n[MISSING]\nq 1\n",
        "colours 3\nvertices a b\n[MISSING]\na 9\n",
        "colours 3\nvertices a b\n[PAIRS]\npair 1 2 paths=x\n",
        "vertices a b\n",
    ] {
        let err = WitnessSpec::parse(bad).unwrap_err();
        assert!(err.is_input_error(), "{bad:?} gave {err}");
    }
}

const SMALL: &str = "
name small
colours 3
vertices a b c
delta 2
edges 3
[MISSING]
a 1,3
b 2,3
c 3
[E0]
endpoints-in a,b
[W]
set all
size 3
";

#[test]
fn synthesized_witness_verifies() {
    let s = spec(SMALL);
    let SynthOutcome::Found {
        graph,
        labels,
        colouring,
        ..
    } = synthesize(&s, SynthOptions::default()).unwrap()
    else {
        panic!("no witness");
    };
    assert_eq!(colouring.uncoloured_edges().len(), 1);
    assert!(verify(&graph, &labels, &colouring, &s).unwrap().passed());
}

#[test]
fn synthesis_is_deterministic() {
    let s = spec(SMALL);
    let run = || match synthesize(
        &s,
        SynthOptions {
            budget: 10_000,
            seed: 5,
        },
    )
    .unwrap()
    {
        SynthOutcome::Found {
            graph, colouring, ..
        } => (graph.edges().to_vec(), colouring),
        other => panic!("{:?}", other.summary()),
    };
    assert_eq!(run(), run());
}

#[test]
fn short_budget_on_the_large_spec_is_inconclusive() {
    let out = synthesize(
        &spec(fixtures::FIG1_SPEC),
        SynthOptions {
            budget: 2_000,
            seed: 0,
        },
    )
    .unwrap();
    let summary = out.summary();
    assert!(!summary.found && !summary.exhausted);
    assert!(summary.nodes <= 2_000);
}
