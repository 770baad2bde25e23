use std::collections::BTreeSet;

use nwe_core::constructions::{gen_equal, gen_general};
use nwe_core::lemma::{derive_certificate, Certificate, Fact, FactKind, Rule};
use nwe_core::StateSet;

const GOLDEN_GENERAL_334: &str = include_str!("golden/cert_general_3_3_4.txt");
const GOLDEN_EQUAL_4_3: &str = include_str!("golden/cert_equal_4_3.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Zero,
    Diagonal,
}

/// A family of derived facts: which party, which two state groups,
/// what kind of fact, and optionally which rule must produce it.
#[derive(Debug, Clone, Copy)]
struct Family {
    party: usize,
    groups: (&'static str, &'static str),
    shape: Shape,
    rule: Option<Rule>,
}

const fn zero(party: usize, a: &'static str, b: &'static str) -> Family {
    Family {
        party,
        groups: (a, b),
        shape: Shape::Zero,
        rule: None,
    }
}

const fn diag(party: usize, a: &'static str) -> Family {
    Family {
        party,
        groups: (a, "S"),
        shape: Shape::Diagonal,
        rule: None,
    }
}

const fn propagated(party: usize, a: &'static str, b: &'static str) -> Family {
    Family {
        party,
        groups: (a, b),
        shape: Shape::Zero,
        rule: Some(Rule::UnitPropagation),
    }
}

fn group(label: &str) -> &str {
    label.split('[').next().unwrap()
}

fn instantiates(set: &StateSet, fact: &Fact, family: &Family) -> bool {
    let shape = match fact.kind {
        FactKind::ZeroEntry(_) => Shape::Zero,
        FactKind::DiagonalEqual { .. } => Shape::Diagonal,
    };
    let (li, lj) = (set.label_of(fact.states.0), set.label_of(fact.states.1));
    let got: BTreeSet<&str> = [group(&li), group(&lj)].into();
    let want: BTreeSet<&str> = [family.groups.0, family.groups.1].into();
    fact.party() == family.party
        && shape == family.shape
        && got == want
        && family.rule.is_none_or(|r| r == fact.rule)
}

fn assert_families(set: &StateSet, cert: &Certificate, families: &[Family]) {
    for family in families {
        assert!(
            cert.facts.iter().any(|f| instantiates(set, f, family)),
            "{}: no fact instantiates {family:?}",
            set.provenance()
        );
    }
}

fn assert_every_fact_in_some_family(set: &StateSet, cert: &Certificate, families: &[Family]) {
    for f in &cert.facts {
        assert!(
            families.iter().any(|fam| instantiates(set, f, fam)),
            "unexpected fact {}",
            f.render(set)
        );
    }
}

/// Zero-entry and diagonal rows for the tripartite general family.
const TRIPARTITE: &[Family] = &[
    zero(0, "B_2", "B_3"),
    zero(0, "B_2", "B_2"),
    zero(1, "B_1", "B_3"),
    zero(1, "B_3", "B_3"),
    zero(2, "B_1", "B_2"),
    zero(2, "B_2", "B_6"),
    zero(2, "B_1", "B_1"),
    zero(2, "B_1", "B_6"),
    zero(2, "B_6", "B_6"),
    propagated(1, "B_3", "B_6"),
    diag(0, "B_1"),
    diag(1, "B_2"),
    diag(1, "B_4"),
    diag(2, "B_3"),
    diag(2, "B_5"),
];

/// Rows of the tripartite table that are empty when d_1 = d_2 and d_3 = d_1 + 1.
fn nonempty_at_334(f: &Family) -> bool {
    !matches!(
        (f.party, f.groups, f.shape),
        (2, ("B_6", "B_6"), Shape::Zero)
            | (1, ("B_3", "B_6"), Shape::Zero)
            | (1, ("B_4", "S"), Shape::Diagonal)
    )
}

const FOUR_PARTY: &[Family] = &[
    zero(0, "B_2", "B_3"),
    zero(0, "B_2", "B_2"),
    zero(1, "B_3", "B_4"),
    zero(1, "B_3", "B_3"),
    zero(2, "B_1", "B_4"),
    zero(2, "B_4", "B_4"),
    zero(3, "B_1", "B_2"),
    zero(3, "B_2", "B_8"),
    zero(3, "B_1", "B_1"),
    zero(3, "B_1", "B_8"),
    zero(3, "B_8", "B_8"),
    propagated(2, "B_4", "B_8"),
    diag(0, "B_1"),
    diag(1, "B_2"),
    diag(2, "B_3"),
    diag(3, "B_4"),
    diag(1, "B_5"),
    diag(2, "B_6"),
    diag(3, "B_7"),
];

const EQUAL_FOUR_PARTY: &[Family] = &[
    zero(0, "G_1", "G_2"),
    zero(0, "G_1", "G_1"),
    zero(1, "G_2", "G_3"),
    zero(1, "G_2", "G_2"),
    zero(2, "G_0", "G_3"),
    zero(2, "G_3", "G_3"),
    zero(3, "G_0", "G_1"),
    zero(3, "G_0", "G_0"),
    diag(0, "G_0"),
    diag(1, "G_1"),
    diag(2, "G_2"),
    diag(3, "G_3"),
];

#[test]
fn golden_general_334() {
    let set = gen_general(&[3, 3, 4]).unwrap();
    let cert = derive_certificate(&set).unwrap();
    assert_eq!(cert.render(&set), GOLDEN_GENERAL_334);
    let present: Vec<Family> = TRIPARTITE.iter().copied().filter(nonempty_at_334).collect();
    assert_families(&set, &cert, &present);
    assert_every_fact_in_some_family(&set, &cert, TRIPARTITE);
}

#[test]
fn golden_equal_4_3() {
    let set = gen_equal(4, 3).unwrap();
    let cert = derive_certificate(&set).unwrap();
    assert_eq!(cert.render(&set), GOLDEN_EQUAL_4_3);
    assert_families(&set, &cert, EQUAL_FOUR_PARTY);
    assert_every_fact_in_some_family(&set, &cert, EQUAL_FOUR_PARTY);
}

#[test]
fn tripartite_rows_all_appear_when_dimensions_are_spread() {
    for dims in [[3, 4, 6], [3, 5, 8], [4, 5, 7]] {
        let set = gen_general(&dims).unwrap();
        let cert = derive_certificate(&set).unwrap();
        assert!(cert.all_trivial());
        assert_families(&set, &cert, TRIPARTITE);
    }
}

#[test]
fn four_party_rows_all_appear() {
    for dims in [[3, 4, 5, 7], [3, 5, 6, 8]] {
        let set = gen_general(&dims).unwrap();
        let cert = derive_certificate(&set).unwrap();
        assert!(cert.all_trivial());
        assert_families(&set, &cert, FOUR_PARTY);
    }
}

#[test]
fn certificates_are_deterministic() {
    for dims in [vec![3, 3, 4], vec![3, 4, 5, 7], vec![4, 4, 4, 4, 4]] {
        let set = gen_general(&dims).unwrap();
        let a = derive_certificate(&set).unwrap().render(&set);
        let b = derive_certificate(&set).unwrap().render(&set);
        assert_eq!(a, b);
    }
}
