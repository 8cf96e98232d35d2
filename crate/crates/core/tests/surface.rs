mod common;

use infsurf::cli::parse_surface;
use infsurf::endspace::{self, Count, Decision};
use infsurf::surface::{surfaces_homeomorphic, Genus, Mark, ValidationError};

fn surface(text: &str) -> infsurf::surface::SurfaceDescriptor {
    parse_surface(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn homeo(a: &str, b: &str) -> Decision {
    surfaces_homeomorphic(&surface(a), &surface(b))
}

#[test]
fn generated_descriptors_validate_and_round_trip() {
    let mut rng = common::rng(0x5EED);
    for _ in 0..2000 {
        let d = common::descriptor(&mut rng);
        d.validate().unwrap_or_else(|e| panic!("{d}: {e}"));
        assert_eq!(parse_surface(&d.to_string()).unwrap(), d);
    }
}

#[test]
fn punctures_are_bounded_by_isolated_ends() {
    let mut rng = common::rng(0xB0B);
    for _ in 0..2000 {
        let d = common::descriptor(&mut rng);
        let isolated = endspace::isolated_count(&d.unmarked_ends());
        let p = d.punctures();
        assert!(p <= isolated, "{d}");
        match d.ends.uniform_mark() {
            Some(Mark::Planar) => assert_eq!(p, isolated, "{d}"),
            Some(Mark::Nonplanar) => assert_eq!(p, Count::Finite(0), "{d}"),
            None => {}
        }
        if !d.ends.has_nonplanar() {
            assert!(!d.has_mixed_end(), "{d}");
        }
    }
}

#[test]
fn puncture_counts() {
    let cases = [
        ("surface(genus=0, boundary=0, ends=I(4))", Count::Finite(5)),
        ("surface(genus=0, boundary=0, ends=I(w))", Count::Omega),
        ("surface(genus=inf, boundary=0, ends=U(cantor!np, pt, pt))", Count::Finite(2)),
        ("surface(genus=inf, boundary=0, ends=seq1pc(pt!np))", Count::Finite(0)),
        ("surface(genus=inf, boundary=0, ends=seq1pc(pt; np))", Count::Omega),
        ("surface(genus=inf, boundary=0, ends=lim1pc(w; np)!np)", Count::Finite(0)),
        ("surface(genus=0, boundary=0, ends=lim1pc(w^2))", Count::Omega),
        ("surface(genus=0, boundary=0, ends=cantor)", Count::Finite(0)),
    ];
    for (text, expect) in cases {
        assert_eq!(surface(text).punctures(), expect, "{text}");
    }
}

#[test]
fn mixed_ends() {
    assert!(surface("surface(genus=inf, boundary=0, ends=seq1pc(pt; np))").has_mixed_end());
    assert!(surface("surface(genus=inf, boundary=0, ends=lim1pc(w; np)!p)").has_mixed_end());
    assert!(!surface("surface(genus=inf, boundary=0, ends=U(pt, seq1pc(pt!np)))").has_mixed_end());
    assert!(!surface("surface(genus=inf, boundary=0, ends=U(cantor!np, I(w)))").has_mixed_end());
}

#[test]
fn closedness_violations_are_located() {
    let d = surface("surface(genus=inf, boundary=0, ends=U(pt, seq1pc(pt!np; p)))");
    assert_eq!(
        d.validate(),
        Err(ValidationError::ClosednessViolation {
            path: "ends.U[1]".into()
        })
    );
    let d = surface("surface(genus=inf, boundary=0, ends=lim1pc(w; p)!np)");
    assert!(matches!(d.validate(), Err(ValidationError::ClosednessViolation { .. })));
}

#[test]
fn genus_must_match_marks() {
    let d = surface("surface(genus=3, boundary=0, ends=pt!np)");
    assert_eq!(
        d.validate(),
        Err(ValidationError::GenusMarkMismatch {
            genus: Genus::Finite(3),
            has_nonplanar: true
        })
    );
    assert!(surface("surface(genus=inf, boundary=0, ends=I(w))").validate().is_err());
}

#[test]
fn infinite_type() {
    assert!(!surface("surface(genus=2, boundary=1, ends=I(3))").is_infinite_type());
    assert!(surface("surface(genus=0, boundary=0, ends=I(w))").is_infinite_type());
    assert!(surface("surface(genus=inf, boundary=0, ends=pt!np)").is_infinite_type());
    assert!(surface("surface(genus=0, boundary=0, ends=cantor)").is_infinite_type());
}

#[test]
fn homeomorphism_is_reflexive_and_symmetric() {
    let mut rng = common::rng(0x4EF);
    for _ in 0..1000 {
        let a = common::descriptor(&mut rng);
        let b = common::descriptor(&mut rng);
        assert_eq!(surfaces_homeomorphic(&a, &a), Decision::Yes, "{a}");
        assert_eq!(surfaces_homeomorphic(&a, &b), surfaces_homeomorphic(&b, &a));
        if surfaces_homeomorphic(&a, &b) == Decision::Yes {
            assert_eq!(a.invariants(), b.invariants(), "{a} vs {b}");
        }
    }
}

#[test]
fn clopen_splits_decide() {
    let yes = [
        (
            "surface(genus=inf, boundary=0, ends=U(cantor!np, pt))",
            "surface(genus=inf, boundary=0, ends=U(pt, cantor!np))",
        ),
        (
            "surface(genus=inf, boundary=0, ends=U(cantor!np, I(w)))",
            "surface(genus=inf, boundary=0, ends=U(I(w + 3), pt, cantor!np))",
        ),
        (
            "surface(genus=inf, boundary=0, ends=U(pt!np, pt!np, I(w^w)))",
            "surface(genus=inf, boundary=0, ends=U(I(1)!np, lim1pc(w)))",
        ),
    ];
    for (a, b) in yes {
        assert_eq!(homeo(a, b), Decision::Yes, "{a} vs {b}");
    }
    let no = [
        (
            "surface(genus=inf, boundary=0, ends=U(cantor!np, I(w)))",
            "surface(genus=inf, boundary=0, ends=U(cantor!np, I(w*2)))",
        ),
        (
            "surface(genus=inf, boundary=0, ends=U(cantor!np, pt))",
            "surface(genus=inf, boundary=0, ends=U(cantor, pt!np))",
        ),
        (
            "surface(genus=0, boundary=0, ends=I(w))",
            "surface(genus=0, boundary=1, ends=I(w))",
        ),
        (
            "surface(genus=1, boundary=0, ends=cantor)",
            "surface(genus=2, boundary=0, ends=cantor)",
        ),
    ];
    for (a, b) in no {
        assert_eq!(homeo(a, b), Decision::No, "{a} vs {b}");
    }
    assert_eq!(
        homeo(
            "surface(genus=inf, boundary=0, ends=seq1pc(I(w); np))",
            "surface(genus=inf, boundary=0, ends=U(seq1pc(I(w); np), pt!np))",
        ),
        Decision::Unknown
    );
}
