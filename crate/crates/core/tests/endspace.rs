mod common;

use std::collections::HashSet;

use infsurf::cli::parse_endspace;
use infsurf::endspace::{
    self, cb_derivative, cb_rank, is_homeomorphic, normalize, normalize_with, CanonicalEndSpace,
    Count, Decision, EndSpace, NormalForm, Scattered, TdBound,
};
use infsurf::ordinal::Ordinal;
use rand::Rng;

fn below_w3() -> Vec<Ordinal> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                out.push(
                    Ordinal::omega_pow_mul(Ordinal::nat(2), a)
                        .add(&Ordinal::omega_pow_mul(Ordinal::one(), b))
                        .add(&Ordinal::nat(c)),
                );
            }
        }
    }
    out
}

fn canonical_forms() -> Vec<CanonicalEndSpace> {
    let mut out = vec![CanonicalEndSpace::empty(), CanonicalEndSpace::cantor()];
    for n in 1..=5 {
        out.push(CanonicalEndSpace::discrete(n));
        out.push(CanonicalEndSpace::cantor_plus(Scattered::discrete(n)));
        for alpha in below_w3().into_iter().filter(|a| !a.is_zero()) {
            out.push(CanonicalEndSpace::scattered_o(n, alpha.clone()));
            out.push(CanonicalEndSpace::cantor_plus(Scattered::O { n, alpha }));
        }
    }
    out
}

#[test]
fn rewriting_is_confluent() {
    let mut rng = common::rng(0xC0F1);
    for _ in 0..100 {
        let e = common::endspace(&mut rng, 6, true);
        let reference = normalize(&e);
        for _ in 0..5 {
            let mut choose = common::rng(rng.gen());
            let nf = normalize_with(&e, |k| choose.gen_range(0..k));
            assert_eq!(nf, reference, "{e}");
        }
    }
}

#[test]
fn normalization_is_idempotent() {
    let mut rng = common::rng(0x1DE);
    for _ in 0..500 {
        let e = common::endspace(&mut rng, 5, true);
        let nf = normalize(&e);
        assert_eq!(normalize(&nf.embed()), nf, "{e}");
    }
}

#[test]
fn canonical_forms_are_unique() {
    let forms = canonical_forms();
    let mut profiles = HashSet::new();
    for c in &forms {
        assert_eq!(normalize(&c.embed()), NormalForm::Canonical(c.clone()), "{c}");
        // distinct forms are told apart by an independent invariant
        let profile = if c.kernel {
            let s = CanonicalEndSpace { kernel: false, scattered: c.scattered.clone() };
            (true, common::point_rank_profile(&s.embed()))
        } else {
            (false, common::point_rank_profile(&c.embed()))
        };
        assert!(profiles.insert(profile.clone()), "{c} collides: {profile:?}");
    }
    for a in &forms {
        for b in &forms {
            let expect = if a == b { Decision::Yes } else { Decision::No };
            assert_eq!(is_homeomorphic(&a.embed(), &b.embed()), expect, "{a} vs {b}");
        }
    }
}

#[test]
fn countable_forms_match_the_order_type_oracle() {
    let mut rng = common::rng(0x0_0DE7);
    let mut seen = 0;
    while seen < 1000 {
        let e = common::endspace(&mut rng, 5, false);
        if common::is_empty(&e) {
            continue;
        }
        seen += 1;
        let (n, alpha) = common::ms_class(&common::order_type(&e).unwrap());
        let expect = if alpha.is_zero() {
            CanonicalEndSpace::discrete(n)
        } else {
            CanonicalEndSpace::scattered_o(n, alpha)
        };
        assert_eq!(normalize(&e), NormalForm::Canonical(expect), "{e}");
    }
}

#[test]
fn derivative_commutes_with_normalization() {
    let mut rng = common::rng(0xD0D);
    let mut seen = 0;
    while seen < 1000 {
        let e = common::endspace(&mut rng, 5, true);
        if let NormalForm::Canonical(c) = normalize(&e) {
            assert_eq!(normalize(&cb_derivative(&e)), NormalForm::Canonical(c.derivative()), "{e}");
            seen += 1;
        }
    }
}

#[test]
fn rank_is_one_plus_rank_of_derivative() {
    for c in canonical_forms().into_iter().filter(|c| !c.kernel && c.scattered != Scattered::Empty) {
        assert_eq!(c.rank(), Ordinal::one().add(&c.derivative().rank()), "{c}");
    }
}

#[test]
fn rank_of_irreducible_is_undecided() {
    let e = parse_endspace("seq1pc(U(cantor, pt))").unwrap().unmarked();
    assert!(matches!(normalize(&e), NormalForm::Irreducible(_)));
    assert!(cb_rank(&e).is_err());
    let inv = endspace::invariants(&e);
    assert_eq!(inv.scattered_rank, None);
    assert_eq!(inv.isolated_count, Count::Omega);
    assert!(!inv.countable);
}

#[test]
fn isolated_points_agree_with_canonical_forms() {
    let mut rng = common::rng(0x150);
    for _ in 0..500 {
        let e = common::endspace(&mut rng, 5, true);
        if let NormalForm::Canonical(c) = normalize(&e) {
            assert_eq!(endspace::isolated_count(&e), c.isolated_count(), "{e}");
        }
    }
}

#[test]
fn td_bound_on_canonical_forms_is_exact() {
    for c in canonical_forms() {
        let td = endspace::td_max(&c.embed());
        let expect = match (&c.scattered, c.kernel) {
            (Scattered::Empty, _) => 0,
            (Scattered::Discrete(m), _) => *m,
            (Scattered::O { n, .. }, _) => *n,
        };
        assert_eq!(td, TdBound::Exact(expect), "{c}");
    }
}

#[test]
fn printing_round_trips() {
    let mut rng = common::rng(0x9A1);
    for _ in 0..500 {
        let e = common::endspace(&mut rng, 5, true);
        if matches!(&e, EndSpace::Union(cs) if cs.is_empty()) {
            continue;
        }
        assert_eq!(parse_endspace(&e.to_string()).unwrap().unmarked(), e);
    }
}

#[test]
fn homeomorphism_is_symmetric_and_sound() {
    let mut rng = common::rng(0x4E0);
    for _ in 0..500 {
        let a = common::endspace(&mut rng, 4, true);
        let b = common::endspace(&mut rng, 4, true);
        let d = is_homeomorphic(&a, &b);
        assert_eq!(d, is_homeomorphic(&b, &a));
        if d == Decision::Yes {
            assert_eq!(endspace::invariants(&a), endspace::invariants(&b), "{a} vs {b}");
        }
        assert_eq!(is_homeomorphic(&a, &a), Decision::Yes);
    }
}
