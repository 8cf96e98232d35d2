//! JSON renderings. Field names here are the documented output schema.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::decide::{
    self, Answer, AnswerKind, Coefficients, Computation, Degree, DistinguishedSource, Question,
    Verdict,
};
use crate::endspace::{Count, NormalForm, SpaceInvariants, TdBound};
use crate::homology::{AbelianGroup, FinitePresentation, SnfResult};
use crate::ordinal::{Ordinal, OrdinalKind};
use crate::surface::{Genus, SurfaceDescriptor};

/// A number when it fits in 64 bits, otherwise its decimal string.
pub fn big_signed(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

pub fn big_unsigned(v: &BigUint) -> Value {
    v.to_u64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

fn count(c: Count) -> Value {
    match c {
        Count::Finite(n) => json!(n),
        Count::Omega => json!("w"),
    }
}

fn genus(g: Genus) -> Value {
    match g {
        Genus::Finite(n) => json!(n),
        Genus::Infinite => json!("inf"),
    }
}

fn td(t: TdBound) -> Value {
    json!({"value": t.value(), "exact": matches!(t, TdBound::Exact(_))})
}

pub fn ordinal(o: &Ordinal) -> Value {
    let kind = match o.kind() {
        OrdinalKind::Zero => "zero",
        OrdinalKind::Successor => "successor",
        OrdinalKind::Limit => "limit",
    };
    let terms: Vec<Value> = o
        .terms()
        .iter()
        .map(|t| json!({"exponent": t.exponent().to_string(), "coefficient": t.coefficient()}))
        .collect();
    json!({"ordinal": o.to_string(), "kind": kind, "terms": terms})
}

pub fn normal_form(nf: &NormalForm) -> Value {
    json!({
        "normal_form": nf.to_string(),
        "canonical": nf.canonical().is_some(),
        "expression": nf.embed().to_string(),
    })
}

pub fn space_invariants(inv: &SpaceInvariants, nf: &NormalForm) -> Value {
    json!({
        "normal_form": nf.to_string(),
        "countable": inv.countable,
        "isolated_count": count(inv.isolated_count),
        "scattered_rank": inv.scattered_rank.as_ref().map(ToString::to_string),
        "perfect_kernel": inv.has_kernel,
        "td_max": td(inv.td_max),
    })
}

pub fn surface_invariants(s: &SurfaceDescriptor) -> Value {
    let inv = s.invariants();
    let nf = crate::endspace::normalize(&s.unmarked_ends());
    json!({
        "surface": s.to_string(),
        "genus": genus(inv.genus),
        "boundary": inv.boundary,
        "punctures": count(inv.punctures),
        "mixed_end": inv.mixed_end,
        "infinite_type": s.is_infinite_type(),
        "ends": space_invariants(&inv.ends, &nf),
    })
}

fn coefficients(c: Coefficients) -> &'static str {
    match c {
        Coefficients::Integral => "integral",
        Coefficients::AnyField => "any_field",
        Coefficients::AnyCoefficients => "any_coefficients",
    }
}

fn computation(c: &Computation) -> Value {
    match c {
        Computation::Sl2zAbelianization => json!({"kind": "sl2z_abelianization"}),
        Computation::H2Lookup { g } => json!({"kind": "h2_lookup", "g": g}),
        Computation::BraidSign { p } => json!({"kind": "braid_sign", "p": p}),
        Computation::DistinguishedSquare { n, source } => json!({
            "kind": "distinguished_square",
            "n": n,
            "k": crate::homology::k_of(*n),
            "source": match source {
                DistinguishedSource::Punctures => "punctures",
                DistinguishedSource::TopRankEnds => "top_rank_ends",
            },
        }),
        Computation::WreathSeries { p } => json!({
            "kind": "wreath_series",
            "p": p,
            "max_degree": decide::SERIES_DEGREE,
        }),
    }
}

fn answer(v: &Verdict, q: Question) -> Value {
    let a: &Answer = v.answer(q);
    let (word, note) = match &a.kind {
        AnswerKind::Yes { .. } => ("yes", None),
        AnswerKind::No { .. } => ("no", None),
        AnswerKind::Unknown { note } => ("unknown", note.clone()),
    };
    let witness = decide::witness_for(v, q).ok().map(|w| {
        json!({
            "degree": match w.witness.degree {
                Degree::Exactly(d) => json!(d),
                Degree::EveryEven => json!("every_even"),
            },
            "description": w.witness.description,
            "computation": computation(&w.witness.computation),
            "result": w.result,
            "verified": w.verified,
        })
    });
    json!({
        "answer": word,
        "coefficients": a.coefficients().map(coefficients),
        "citation": a.citation,
        "witness": witness,
        "note": note,
    })
}

pub fn verdict(v: &Verdict) -> Value {
    let d = &v.derived;
    json!({
        "qI": answer(v, Question::I),
        "qII": answer(v, Question::II),
        "qIII": answer(v, Question::III),
        "symbols": v.symbols(),
        "cell": v.cell.id(),
        "cell_label": v.cell.name(),
        "derived": {
            "genus": genus(d.genus),
            "punctures": count(d.punctures),
            "mixed_end": d.mixed_end,
            "ends": d.ends.to_string(),
            "td_max": td(d.td_max),
        },
        "notes": v.notes,
    })
}

fn matrix(m: &crate::homology::IntegerMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(big_signed).collect()))
            .collect(),
    )
}

pub fn snf(s: &SnfResult) -> Value {
    json!({
        "diagonal": s.diagonal.iter().map(big_signed).collect::<Vec<_>>(),
        "left": matrix(&s.left),
        "right": matrix(&s.right),
    })
}

pub fn abelian_group(g: &AbelianGroup, p: &FinitePresentation) -> Value {
    json!({
        "group": g.to_string(),
        "rank": g.rank,
        "torsion": g.torsion.iter().map(big_unsigned).collect::<Vec<_>>(),
        "presentation": p.to_string(),
    })
}
