mod common;

use std::collections::HashSet;

use infsurf::cli::parse_surface;
use infsurf::decide::{
    decide, decide_facts, witness_for, AnswerKind, Cell, Coefficients, Computation, DecideError,
    DerivedFacts, DistinguishedSource, Question, WitnessError,
};
use infsurf::endspace::{normalize, Count, NormalForm, TdBound};
use infsurf::surface::Genus;

const QUESTIONS: [Question; 3] = [Question::I, Question::II, Question::III];

fn verdict(text: &str) -> infsurf::decide::Verdict {
    decide(&parse_surface(text).unwrap()).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn sample_ends() -> Vec<NormalForm> {
    [
        "cantor",
        "U(cantor, pt)",
        "I(w)",
        "I(w^2*4)",
        "I(w^w*2)",
        "lim1pc(w^w)",
        "U(cantor, I(w*5))",
        "seq1pc(U(cantor, pt))",
        "U(seq1pc(U(cantor, pt)), I(w^3*6))",
    ]
    .iter()
    .map(|s| normalize(&infsurf::cli::parse_endspace(s).unwrap().unmarked()))
    .collect()
}

/// Every combination of facts, consistent or not.
fn all_facts() -> Vec<DerivedFacts> {
    let genera = [Genus::Infinite, Genus::Finite(0), Genus::Finite(1), Genus::Finite(2), Genus::Finite(7)];
    let punctures = (0..7).map(Count::Finite).chain([Count::Omega]);
    let tds = [TdBound::Exact(0), TdBound::Exact(3), TdBound::Exact(4), TdBound::AtLeast(2), TdBound::AtLeast(5)];
    let mut out = Vec::new();
    for genus in genera {
        for p in punctures.clone() {
            for mixed_end in [false, true] {
                for ends in sample_ends() {
                    for td_max in tds {
                        out.push(DerivedFacts {
                            genus,
                            punctures: p,
                            mixed_end,
                            ends: ends.clone(),
                            td_max,
                        });
                    }
                }
            }
        }
    }
    out
}

#[test]
fn chain_holds_on_every_combination_of_facts() {
    let mut cells = HashSet::new();
    for facts in all_facts() {
        let v = decide_facts(&facts);
        assert!(v.chain_holds(), "{facts:?}: {}", v.symbols());
        assert_eq!(v.cell, facts.cell());
        cells.insert(v.cell);
    }
    assert_eq!(cells.len(), Cell::ALL.len());
}

#[test]
fn only_the_disc_cell_answers_for_all_coefficients() {
    for facts in all_facts() {
        let v = decide_facts(&facts);
        for q in QUESTIONS {
            if v.answer(q).coefficients() == Some(Coefficients::AnyCoefficients) {
                assert_eq!(v.cell, Cell::PlanarAtMostOnePuncture);
            }
        }
        if v.cell == Cell::PlanarAtMostOnePuncture {
            assert!(QUESTIONS.iter().all(|&q| v.answer(q).is_no()));
        }
    }
}

#[test]
fn decisions_depend_only_on_facts() {
    let mut rng = common::rng(0xFAC7);
    for _ in 0..2000 {
        let d = common::descriptor(&mut rng);
        let Ok(v) = decide(&d) else { continue };
        assert_eq!(decide(&d).unwrap(), v);
        assert_eq!(decide_facts(&DerivedFacts::of(&d)), v);
    }
    let a = verdict("surface(genus=0, boundary=0, ends=U(cantor, pt, I(3)))");
    let b = verdict("surface(genus=0, boundary=0, ends=U(I(2), cantor, pt, pt))");
    assert_eq!(a, b);
}

#[test]
fn fuzzed_yes_answers_carry_verified_witnesses() {
    let mut rng = common::rng(0x11E5);
    let mut cells = HashSet::new();
    let mut checked = HashSet::new();
    for _ in 0..20_000 {
        let d = common::descriptor(&mut rng);
        let Ok(v) = decide(&d) else { continue };
        assert!(v.chain_holds(), "{d}");
        cells.insert(v.cell);
        for q in QUESTIONS {
            match v.answer(q).witness() {
                Some(w) if checked.insert(w.computation.clone()) => {
                    let check = witness_for(&v, q).unwrap();
                    assert!(check.verified, "{d} {q}: {}", check.result);
                }
                Some(_) => {}
                None => assert_eq!(witness_for(&v, q), Err(WitnessError::NoWitness(q))),
            }
        }
    }
    let missing: Vec<_> = Cell::ALL.iter().filter(|c| !cells.contains(c)).collect();
    assert!(missing.is_empty(), "unreached cells: {missing:?}");
}

#[test]
fn distinguished_set_sources() {
    let v = verdict("surface(genus=0, boundary=0, ends=U(cantor, pt, pt, pt, pt, pt))");
    let w = v.q1.witness().unwrap();
    assert_eq!(
        w.computation,
        Computation::DistinguishedSquare {
            n: 5,
            source: DistinguishedSource::Punctures
        }
    );
    assert!(w.description.contains("k = 2"));

    let v = verdict("surface(genus=0, boundary=0, ends=I(w^2*4))");
    assert_eq!(
        v.q3.witness().unwrap().computation,
        Computation::DistinguishedSquare {
            n: 4,
            source: DistinguishedSource::TopRankEnds
        }
    );
}

#[test]
fn undetermined_invariant_is_reported() {
    // the top-rank set sits inside an irreducible piece
    let v = verdict("surface(genus=0, boundary=0, ends=U(seq1pc(U(cantor, pt)), I(w)))");
    assert_eq!(v.cell, Cell::PlanarOther);
    assert!(matches!(&v.q1.kind, AnswerKind::Unknown { note: Some(n) } if n.contains("at least")));
}

#[test]
fn questions_coincide_without_punctures() {
    let v = verdict("surface(genus=0, boundary=0, ends=cantor)");
    assert!(v.notes.iter().any(|n| n.contains("coincide")));
    let v = verdict("surface(genus=inf, boundary=0, ends=U(cantor!np, pt))");
    assert_eq!(v.q2, v.q3);
}

#[test]
fn rejected_descriptors() {
    let d = parse_surface("surface(genus=0, boundary=2, ends=cantor)").unwrap();
    assert!(matches!(decide(&d), Err(DecideError::HasBoundary(2))));
    let d = parse_surface("surface(genus=4, boundary=0, ends=I(6))").unwrap();
    assert!(matches!(decide(&d), Err(DecideError::NotInfiniteType)));
    let d = parse_surface("surface(genus=0, boundary=0, ends=pt!np)").unwrap();
    assert!(matches!(decide(&d), Err(DecideError::InvalidDescriptor(_))));
}
