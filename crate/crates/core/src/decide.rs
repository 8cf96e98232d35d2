//! Answers the three support questions for an infinite-type surface without
//! boundary:
//!
//! * I: is every class in positive degree zero, or are there classes
//!   supported on a compact subsurface?
//! * II: are there nonzero classes supported on a finite-type subsurface?
//! * III: does the image of some finite-type mapping class group contain
//!   nonzero classes?
//!
//! A Yes to I implies a Yes to II, which implies a Yes to III. Yes always
//! means integral coefficients. No carries its coefficient scope.

use std::fmt;

use thiserror::Error;

use crate::endspace::{self, Count, NormalForm, Scattered, TdBound};
use crate::homology::{self, HKind, Preset, SeriesKind};
use crate::ordinal::Ordinal;
use crate::surface::{Genus, SurfaceDescriptor, ValidationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(#[from] ValidationError),
    #[error("surface has {0} boundary components; only boundaryless surfaces are classified")]
    HasBoundary(u64),
    #[error("surface is of finite type")]
    NotInfiniteType,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("question {0} is not answered Yes, so there is no witness")]
    NoWitness(Question),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Question {
    I,
    II,
    III,
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Question::I => "I",
            Question::II => "II",
            Question::III => "III",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integral,
    AnyField,
    AnyCoefficients,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Integral => "integral",
            Coefficients::AnyField => "any field",
            Coefficients::AnyCoefficients => "any coefficients",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Exactly(u32),
    EveryEven,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Exactly(d) => write!(f, "{d}"),
            Degree::EveryEven => f.write_str("every even degree"),
        }
    }
}

/// Where the size of the distinguished set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistinguishedSource {
    Punctures,
    TopRankEnds,
}

/// A homology-module computation backing a positive answer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Computation {
    /// H₁ of the torus mapping class group via SL₂(Z).
    Sl2zAbelianization,
    /// Tabulated H₂ of a closed genus-g mapping class group.
    H2Lookup { g: u64 },
    /// Braid group onto the abelianized symmetric group.
    BraidSign { p: u64 },
    /// 2 ∈ Z/2k for a distinguished set of size n.
    DistinguishedSquare { n: u64, source: DistinguishedSource },
    /// Partition-count series of the wreath quotient.
    WreathSeries { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessRef {
    pub degree: Degree,
    pub description: String,
    pub computation: Computation,
}

/// The outcome of running a witness computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub witness: WitnessRef,
    pub result: String,
    pub verified: bool,
}

/// Degrees checked for the even-degree series witness.
pub const SERIES_DEGREE: u64 = 40;

impl Computation {
    pub fn execute(&self) -> (String, bool) {
        match self {
            Computation::Sl2zAbelianization => {
                let p = homology::preset(Preset::Sl2z, 0).expect("sl2z preset");
                let ab = homology::abelianize(&p);
                let table = homology::h_lookup(HKind::H1MapTorus, 1).expect("tabulated");
                let ok = ab == table.group && ab == homology::AbelianGroup::cyclic(12);
                (format!("H1(Map(torus)) = {ab}"), ok)
            }
            Computation::H2Lookup { g } => match homology::h_lookup(HKind::H2MapClosed, *g) {
                Ok(c) => (
                    format!("H2(Map(closed genus {g})) = {} [{}]", c.group, c.citation),
                    !c.group.is_trivial(),
                ),
                Err(e) => (e.to_string(), false),
            },
            Computation::BraidSign { p } => match homology::braid_sign(*p) {
                Ok(r) => (
                    format!("H1(B_{p}) = {} onto H1(S_{p}) = {}", r.braid, r.symmetric),
                    r.surjective,
                ),
                Err(e) => (e.to_string(), false),
            },
            Computation::DistinguishedSquare { n, .. } => {
                let k = homology::k_of(*n);
                if *n <= homology::MAX_STRANDS {
                    match homology::distinguished_square(*n) {
                        Ok(r) => (
                            format!("k = {k}, element 2 of Z/{} is nonzero", 2 * k),
                            r.verified() && r.two_nonzero,
                        ),
                        Err(e) => (e.to_string(), false),
                    }
                } else {
                    // beyond the presentation range only the arithmetic is checked
                    (
                        format!("k = {k}, element 2 of Z/{} is nonzero (arithmetic only)", 2 * k),
                        k >= 2 && 2 % (2 * k) != 0,
                    )
                }
            }
            Computation::WreathSeries { p } => {
                match homology::poincare_series(SeriesKind::WreathQuotient, *p, SERIES_DEGREE) {
                    Ok(c) => {
                        let ok = c.iter().step_by(2).all(|x| *x >= 1u32.into());
                        (
                            format!(
                                "wreath quotient series positive in every even degree up to {SERIES_DEGREE}"
                            ),
                            ok,
                        )
                    }
                    Err(e) => (e.to_string(), false),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnswerKind {
    Yes { witness: WitnessRef },
    No { coefficients: Coefficients },
    Unknown { note: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Answer {
    pub kind: AnswerKind,
    pub citation: &'static str,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self.kind, AnswerKind::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self.kind, AnswerKind::No { .. })
    }

    /// Yes is always integral; Unknown has no scope.
    pub fn coefficients(&self) -> Option<Coefficients> {
        match &self.kind {
            AnswerKind::Yes { .. } => Some(Coefficients::Integral),
            AnswerKind::No { coefficients } => Some(*coefficients),
            AnswerKind::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&WitnessRef> {
        match &self.kind {
            AnswerKind::Yes { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn symbol(&self) -> char {
        match self.kind {
            AnswerKind::Yes { .. } => '✓',
            AnswerKind::No { .. } => '✗',
            AnswerKind::Unknown { .. } => '?',
        }
    }

    fn yes(witness: WitnessRef, citation: &'static str) -> Self {
        Answer {
            kind: AnswerKind::Yes { witness },
            citation,
        }
    }

    fn no(coefficients: Coefficients, citation: &'static str) -> Self {
        Answer {
            kind: AnswerKind::No { coefficients },
            citation,
        }
    }

    fn unknown(note: Option<String>, citation: &'static str) -> Self {
        Answer {
            kind: AnswerKind::Unknown { note },
            citation,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AnswerKind::Yes { witness } => {
                write!(f, "Yes (integral; degree {})", witness.degree)
            }
            AnswerKind::No { coefficients } => write!(f, "No ({coefficients})"),
            AnswerKind::Unknown { .. } => f.write_str("Unknown"),
        }
    }
}

/// The row and column of the decision table a surface falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    InfiniteGenusNoPunctures,
    InfiniteGenusFinitePunctures,
    InfiniteGenusMixed,
    InfiniteGenusUnmixed,
    FinitePositiveGenus,
    PlanarAtMostOnePuncture,
    PlanarTwoOrThreePunctures,
    PlanarFinitePunctures,
    PlanarDistinguished,
    PlanarOrdinalInterval,
    PlanarOther,
}

impl Cell {
    pub const ALL: [Cell; 11] = [
        Cell::InfiniteGenusNoPunctures,
        Cell::InfiniteGenusFinitePunctures,
        Cell::InfiniteGenusMixed,
        Cell::InfiniteGenusUnmixed,
        Cell::FinitePositiveGenus,
        Cell::PlanarAtMostOnePuncture,
        Cell::PlanarTwoOrThreePunctures,
        Cell::PlanarFinitePunctures,
        Cell::PlanarDistinguished,
        Cell::PlanarOrdinalInterval,
        Cell::PlanarOther,
    ];

    /// Stable identifier used in JSON output.
    pub fn id(self) -> &'static str {
        match self {
            Cell::InfiniteGenusNoPunctures => "infinite_genus_no_punctures",
            Cell::InfiniteGenusFinitePunctures => "infinite_genus_finite_punctures",
            Cell::InfiniteGenusMixed => "infinite_genus_mixed",
            Cell::InfiniteGenusUnmixed => "infinite_genus_unmixed",
            Cell::FinitePositiveGenus => "finite_positive_genus",
            Cell::PlanarAtMostOnePuncture => "planar_at_most_one_puncture",
            Cell::PlanarTwoOrThreePunctures => "planar_two_or_three_punctures",
            Cell::PlanarFinitePunctures => "planar_finite_punctures",
            Cell::PlanarDistinguished => "planar_distinguished",
            Cell::PlanarOrdinalInterval => "planar_ordinal_interval",
            Cell::PlanarOther => "planar_other",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Cell::InfiniteGenusNoPunctures => "genus inf, p = 0",
            Cell::InfiniteGenusFinitePunctures => "genus inf, 0 < p < inf",
            Cell::InfiniteGenusMixed => "genus inf, p = w, mixed end",
            Cell::InfiniteGenusUnmixed => "genus inf, p = w, no mixed end",
            Cell::FinitePositiveGenus => "0 < genus < inf",
            Cell::PlanarAtMostOnePuncture => "genus 0, p in {0, 1}",
            Cell::PlanarTwoOrThreePunctures => "genus 0, p in {2, 3}",
            Cell::PlanarFinitePunctures => "genus 0, 4 <= p < inf",
            Cell::PlanarDistinguished => "genus 0, p = w, distinguished set of size >= 4",
            Cell::PlanarOrdinalInterval => "genus 0, p = w, ends = [0, w^a]",
            Cell::PlanarOther => "genus 0, p = w, other",
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything the decision depends on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivedFacts {
    pub genus: Genus,
    pub punctures: Count,
    pub mixed_end: bool,
    pub ends: NormalForm,
    pub td_max: TdBound,
}

impl DerivedFacts {
    pub fn of(d: &SurfaceDescriptor) -> Self {
        let ends = endspace::normalize(&d.unmarked_ends());
        let td_max = endspace::td_of(&ends);
        DerivedFacts {
            genus: d.genus,
            punctures: d.punctures(),
            mixed_end: d.has_mixed_end(),
            ends,
            td_max,
        }
    }

    /// α when the end-space is a single copy of [0, ω^α].
    pub fn ordinal_interval(&self) -> Option<&Ordinal> {
        match self.ends.canonical() {
            Some(c) if !c.kernel => match &c.scattered {
                Scattered::O { n: 1, alpha } => Some(alpha),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn cell(&self) -> Cell {
        match (self.genus, self.punctures) {
            (Genus::Infinite, Count::Finite(0)) => Cell::InfiniteGenusNoPunctures,
            (Genus::Infinite, Count::Finite(_)) => Cell::InfiniteGenusFinitePunctures,
            (Genus::Infinite, Count::Omega) if self.mixed_end => Cell::InfiniteGenusMixed,
            (Genus::Infinite, Count::Omega) => Cell::InfiniteGenusUnmixed,
            (Genus::Finite(g), _) if g > 0 => Cell::FinitePositiveGenus,
            (_, Count::Finite(0 | 1)) => Cell::PlanarAtMostOnePuncture,
            (_, Count::Finite(2 | 3)) => Cell::PlanarTwoOrThreePunctures,
            (_, Count::Finite(_)) => Cell::PlanarFinitePunctures,
            (_, Count::Omega) if self.td_max.certifies(4) => Cell::PlanarDistinguished,
            (_, Count::Omega) if self.ordinal_interval().is_some() => {
                Cell::PlanarOrdinalInterval
            }
            (_, Count::Omega) => Cell::PlanarOther,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub q1: Answer,
    pub q2: Answer,
    pub q3: Answer,
    pub cell: Cell,
    pub derived: DerivedFacts,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn answer(&self, q: Question) -> &Answer {
        match q {
            Question::I => &self.q1,
            Question::II => &self.q2,
            Question::III => &self.q3,
        }
    }

    /// Yes propagates forward along I → II → III, and No backward.
    pub fn chain_holds(&self) -> bool {
        (!self.q1.is_yes() || self.q2.is_yes())
            && (!self.q2.is_yes() || self.q3.is_yes())
            && (!self.q3.is_no() || self.q2.is_no())
            && (!self.q2.is_no() || self.q1.is_no())
    }

    pub fn symbols(&self) -> String {
        [&self.q1, &self.q2, &self.q3]
            .iter()
            .map(|a| a.symbol())
            .collect()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}  [{}]", self.symbols(), self.cell)?;
        for q in [Question::I, Question::II, Question::III] {
            let a = self.answer(q);
            write!(f, "  {q:<3} {a}  -- {}", a.citation)?;
            if let AnswerKind::Unknown { note: Some(n) } = &a.kind {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

const CITE_NO_PUNCTURES: &str =
    "infinite genus without punctures: every positive-degree class vanishes on compact support (field coefficients)";
const CITE_FINITE_PUNCTURES: &str =
    "infinite genus with finitely many punctures: nothing compactly supported over a field, but a Z summand in every even degree from the wreath product of the circle group";
const CITE_MIXED: &str =
    "infinite genus with a mixed end: finite-type subsurfaces induce the zero map (field coefficients)";
const CITE_UNMIXED_I: &str =
    "infinite genus with infinitely many punctures: compactly supported classes vanish (field coefficients)";
const CITE_UNMIXED_OPEN: &str = "open when there are infinitely many punctures and no mixed end";
const CITE_FINITE_GENUS: &str =
    "finite positive genus: classes pulled back through the capping map from the closed surface";
const CITE_DISC_CANTOR: &str =
    "genus zero with at most one puncture: the surface retracts onto the plane minus a Cantor set, whose mapping class group is acyclic (any coefficients)";
const CITE_BRAID_SIGN: &str =
    "two or three punctures: the braid group maps onto Z/2 through the puncture permutation";
const CITE_FEW_PUNCTURES_OPEN: &str = "open for two or three punctures";
const CITE_DISTINGUISHED: &str =
    "genus zero with a topologically distinguished set of at least four ends: element 2 of Z/2k survives";
const CITE_INTERVAL: &str =
    "genus zero with ends homeomorphic to [0, w^a]: finite-type subsurfaces induce the zero map (field coefficients)";
const CITE_PLANAR_OPEN: &str = "open for this genus-zero end-space";

fn all(a: Answer) -> (Answer, Answer, Answer) {
    (a.clone(), a.clone(), a)
}

fn distinguished_witness(n: u64, source: DistinguishedSource) -> WitnessRef {
    let k = homology::k_of(n);
    WitnessRef {
        degree: Degree::Exactly(1),
        description: format!(
            "element 2 of Z/{} with k = {k} from a distinguished set of {n} ends",
            2 * k
        ),
        computation: Computation::DistinguishedSquare { n, source },
    }
}

/// The decision proper: a function of the derived facts alone.
pub fn decide_facts(facts: &DerivedFacts) -> Verdict {
    use Coefficients::*;
    let cell = facts.cell();
    let mut notes = Vec::new();
    match facts.punctures {
        Count::Finite(0) => notes.push("with no punctures, questions I, II and III coincide".into()),
        Count::Finite(1) => notes.push("with one puncture, questions II and III coincide".into()),
        _ => {}
    }
    let (q1, q2, q3) = match cell {
        Cell::InfiniteGenusNoPunctures => all(Answer::no(AnyField, CITE_NO_PUNCTURES)),
        Cell::InfiniteGenusFinitePunctures => {
            let p = facts.punctures.finite().expect("finite punctures");
            let w = WitnessRef {
                degree: Degree::EveryEven,
                description: format!(
                    "Z summand in every even degree from {p} marked point(s) via the wreath product of the circle with S_{p}"
                ),
                computation: Computation::WreathSeries { p },
            };
            (
                Answer::no(AnyField, CITE_FINITE_PUNCTURES),
                Answer::yes(w.clone(), CITE_FINITE_PUNCTURES),
                Answer::yes(w, CITE_FINITE_PUNCTURES),
            )
        }
        Cell::InfiniteGenusMixed => all(Answer::no(AnyField, CITE_MIXED)),
        Cell::InfiniteGenusUnmixed => (
            Answer::no(AnyField, CITE_UNMIXED_I),
            Answer::unknown(None, CITE_UNMIXED_OPEN),
            Answer::unknown(None, CITE_UNMIXED_OPEN),
        ),
        Cell::FinitePositiveGenus => {
            let Genus::Finite(g) = facts.genus else {
                unreachable!()
            };
            let w = if g == 1 {
                WitnessRef {
                    degree: Degree::Exactly(1),
                    description: "H1(Map(torus)) = Z/12".into(),
                    computation: Computation::Sl2zAbelianization,
                }
            } else {
                WitnessRef {
                    degree: Degree::Exactly(2),
                    description: format!("nonzero H2 of the closed genus-{g} mapping class group"),
                    computation: Computation::H2Lookup { g },
                }
            };
            all(Answer::yes(w, CITE_FINITE_GENUS))
        }
        Cell::PlanarAtMostOnePuncture => all(Answer::no(AnyCoefficients, CITE_DISC_CANTOR)),
        Cell::PlanarTwoOrThreePunctures => {
            let p = facts.punctures.finite().expect("finite punctures");
            let w = WitnessRef {
                degree: Degree::Exactly(1),
                description: format!("sign of the puncture permutation, B_{p} onto Z/2"),
                computation: Computation::BraidSign { p },
            };
            (
                Answer::unknown(None, CITE_FEW_PUNCTURES_OPEN),
                Answer::unknown(None, CITE_FEW_PUNCTURES_OPEN),
                Answer::yes(w, CITE_BRAID_SIGN),
            )
        }
        Cell::PlanarFinitePunctures => {
            let p = facts.punctures.finite().expect("finite punctures");
            notes.push(format!("distinguished set: the {p} punctures"));
            all(Answer::yes(
                distinguished_witness(p, DistinguishedSource::Punctures),
                CITE_DISTINGUISHED,
            ))
        }
        Cell::PlanarDistinguished => {
            let n = facts.td_max.value();
            notes.push(format!(
                "distinguished set: the {n} ends of maximal Cantor-Bendixson rank"
            ));
            all(Answer::yes(
                distinguished_witness(n, DistinguishedSource::TopRankEnds),
                CITE_DISTINGUISHED,
            ))
        }
        Cell::PlanarOrdinalInterval => all(Answer::no(AnyField, CITE_INTERVAL)),
        Cell::PlanarOther => {
            let note = match facts.td_max {
                TdBound::AtLeast(m) => Some(format!(
                    "indeterminate invariant: the largest distinguished set is only known to have at least {m} ends"
                )),
                TdBound::Exact(_) => None,
            };
            all(Answer::unknown(note, CITE_PLANAR_OPEN))
        }
    };
    Verdict {
        q1,
        q2,
        q3,
        cell,
        derived: facts.clone(),
        notes,
    }
}

pub fn decide(d: &SurfaceDescriptor) -> Result<Verdict, DecideError> {
    d.validate()?;
    if d.boundary != 0 {
        return Err(DecideError::HasBoundary(d.boundary));
    }
    if !d.is_infinite_type() {
        return Err(DecideError::NotInfiniteType);
    }
    Ok(decide_facts(&DerivedFacts::of(d)))
}

/// Runs the computation behind a Yes answer.
pub fn witness_for(v: &Verdict, q: Question) -> Result<WitnessCheck, WitnessError> {
    let witness = v.answer(q).witness().ok_or(WitnessError::NoWitness(q))?;
    let (result, verified) = witness.computation.execute();
    Ok(WitnessCheck {
        witness: witness.clone(),
        result,
        verified,
    })
}
