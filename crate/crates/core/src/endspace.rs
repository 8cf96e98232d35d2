//! Symbolic end-spaces: closed subsets of the Cantor set described by a
//! small expression language, their Cantor–Bendixson calculus, and
//! normalization to canonical homeomorphism types.
//!
//! Countable compact spaces are classified by `O(n, a)`, the disjoint union
//! of `n` copies of the ordinal interval `[0, w^a]`. Uncountable spaces whose
//! scattered part is a clopen summand are classified by the Cantor set plus
//! that summand. Anything else (a compactification point accumulated by both
//! the perfect kernel and scattered material) is left [`NormalForm::Irreducible`].

mod rewrite;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::ordinal::Ordinal;

pub use rewrite::normalize_with;

/// An ordinal known to be a limit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LimitOrdinal(Ordinal);

impl LimitOrdinal {
    pub fn new(o: Ordinal) -> Result<Self, EndSpaceError> {
        if o.is_limit() {
            Ok(LimitOrdinal(o))
        } else {
            Err(EndSpaceError::NotLimit(o))
        }
    }

    pub fn get(&self) -> &Ordinal {
        &self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndSpaceError {
    #[error("lim1pc needs a limit ordinal, got {0}")]
    NotLimit(Ordinal),
    #[error("seq1pc of the empty space")]
    EmptyCompactification,
    #[error("Cantor-Bendixson rank is undecidable for the irreducible form {0}")]
    RankUndecidable(EndSpace),
}

/// Expression for a closed subset of the Cantor set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndSpace {
    Empty,
    Pt,
    /// The closed ordinal interval `[0, b]`.
    Interval(Ordinal),
    Cantor,
    Union(Vec<EndSpace>),
    /// One-point compactification of countably many copies of the child.
    Seq(Box<EndSpace>),
    /// One-point compactification of `⊔ [0, w^(l[i])]` over the canonical
    /// fundamental sequence of `l`.
    Lim(LimitOrdinal),
}

impl EndSpace {
    /// Union with nested unions spliced in and empty summands dropped.
    pub fn union(children: impl IntoIterator<Item = EndSpace>) -> EndSpace {
        let mut out = Vec::new();
        for c in children {
            match c {
                EndSpace::Union(inner) => out.extend(inner),
                EndSpace::Empty => {}
                other => out.push(other),
            }
        }
        match out.len() {
            0 => EndSpace::Empty,
            1 => out.pop().unwrap(),
            _ => EndSpace::Union(out),
        }
    }

    pub fn seq(child: EndSpace) -> Result<EndSpace, EndSpaceError> {
        if child.is_empty() {
            return Err(EndSpaceError::EmptyCompactification);
        }
        Ok(EndSpace::Seq(Box::new(child)))
    }

    pub fn lim(l: Ordinal) -> Result<EndSpace, EndSpaceError> {
        Ok(EndSpace::Lim(LimitOrdinal::new(l)?))
    }

    pub fn interval(b: impl Into<Ordinal>) -> EndSpace {
        EndSpace::Interval(b.into())
    }

    /// Syntactic emptiness; every nonempty constructor denotes a nonempty space.
    pub fn is_empty(&self) -> bool {
        match self {
            EndSpace::Empty => true,
            EndSpace::Union(cs) => cs.iter().all(EndSpace::is_empty),
            _ => false,
        }
    }

    fn contains_cantor(&self) -> bool {
        match self {
            EndSpace::Cantor => true,
            EndSpace::Union(cs) => cs.iter().any(EndSpace::contains_cantor),
            EndSpace::Seq(c) => c.contains_cantor(),
            _ => false,
        }
    }

    pub fn is_countable(&self) -> bool {
        !self.contains_cantor()
    }
}

/// Flattened, empty-free, sorted union. Used for reduced forms so that
/// equal spaces built in different orders print identically.
pub(crate) fn sorted_union(children: impl IntoIterator<Item = EndSpace>) -> EndSpace {
    let mut out = Vec::new();
    for c in children {
        match c {
            EndSpace::Union(inner) => out.extend(inner),
            EndSpace::Empty => {}
            other => out.push(other),
        }
    }
    out.sort();
    match out.len() {
        0 => EndSpace::Empty,
        1 => out.pop().unwrap(),
        _ => EndSpace::Union(out),
    }
}

/// A finite count or `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Finite(u64),
    Omega,
}

impl Count {
    pub fn is_zero(self) -> bool {
        self == Count::Finite(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Omega => None,
        }
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => {
                Count::Finite(a.checked_add(b).expect("count overflow"))
            }
            _ => Count::Omega,
        }
    }
}

impl PartialOrd for Count {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Count {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Count::Finite(a), Count::Finite(b)) => a.cmp(b),
            (Count::Finite(_), Count::Omega) => Ordering::Less,
            (Count::Omega, Count::Finite(_)) => Ordering::Greater,
            (Count::Omega, Count::Omega) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Omega => f.write_str("w"),
        }
    }
}

/// Countable compact part of a canonical form.
///
/// Finite spaces are always `Discrete`; `O` requires `alpha >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scattered {
    Empty,
    Discrete(u64),
    O { n: u64, alpha: Ordinal },
}

impl Scattered {
    pub fn discrete(m: u64) -> Scattered {
        if m == 0 {
            Scattered::Empty
        } else {
            Scattered::Discrete(m)
        }
    }

    fn merge(self, other: Scattered) -> Scattered {
        use Scattered::*;
        match (self, other) {
            (Empty, x) | (x, Empty) => x,
            (Discrete(a), Discrete(b)) => Discrete(a.checked_add(b).expect("count overflow")),
            (Discrete(_), o @ O { .. }) | (o @ O { .. }, Discrete(_)) => o,
            (O { n, alpha }, O { n: m, alpha: beta }) => match alpha.cmp(&beta) {
                Ordering::Greater => O { n, alpha },
                Ordering::Less => O { n: m, alpha: beta },
                Ordering::Equal => O {
                    n: n.checked_add(m).expect("count overflow"),
                    alpha,
                },
            },
        }
    }

    /// Cantor–Bendixson rank: 0, 1, or `alpha + 1`.
    pub fn rank(&self) -> Ordinal {
        match self {
            Scattered::Empty => Ordinal::zero(),
            Scattered::Discrete(_) => Ordinal::one(),
            Scattered::O { alpha, .. } => alpha.succ(),
        }
    }

    /// Number of points of maximal rank.
    pub fn top_count(&self) -> u64 {
        match self {
            Scattered::Empty => 0,
            Scattered::Discrete(m) => *m,
            Scattered::O { n, .. } => *n,
        }
    }

    fn derivative(&self) -> Scattered {
        match self {
            Scattered::Empty | Scattered::Discrete(_) => Scattered::Empty,
            Scattered::O { n, alpha } => match alpha.as_finite() {
                Some(1) => Scattered::Discrete(*n),
                Some(a) => Scattered::O {
                    n: *n,
                    alpha: Ordinal::nat(a - 1),
                },
                // -1 + a = a for infinite a
                None => self.clone(),
            },
        }
    }

    fn embed(&self) -> EndSpace {
        match self {
            Scattered::Empty => EndSpace::Empty,
            Scattered::Discrete(1) => EndSpace::Pt,
            Scattered::Discrete(m) => EndSpace::Interval(Ordinal::nat(m - 1)),
            Scattered::O { n, alpha } => {
                EndSpace::Interval(Ordinal::omega_pow_mul(alpha.clone(), *n))
            }
        }
    }

    fn isolated(&self) -> Count {
        match self {
            Scattered::Empty => Count::Finite(0),
            Scattered::Discrete(m) => Count::Finite(*m),
            Scattered::O { .. } => Count::Omega,
        }
    }
}

/// Canonical homeomorphism type: an optional Cantor-set kernel plus a
/// disjoint countable summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalEndSpace {
    pub kernel: bool,
    pub scattered: Scattered,
}

impl CanonicalEndSpace {
    pub fn empty() -> Self {
        Self::countable(Scattered::Empty)
    }

    pub fn discrete(m: u64) -> Self {
        Self::countable(Scattered::discrete(m))
    }

    /// `O(n, alpha)`; callers must pass `n >= 1` and `alpha >= 1`.
    pub fn scattered_o(n: u64, alpha: Ordinal) -> Self {
        debug_assert!(n >= 1 && !alpha.is_zero());
        Self::countable(Scattered::O { n, alpha })
    }

    pub fn cantor() -> Self {
        Self::cantor_plus(Scattered::Empty)
    }

    pub fn cantor_plus(scattered: Scattered) -> Self {
        CanonicalEndSpace {
            kernel: true,
            scattered,
        }
    }

    fn countable(scattered: Scattered) -> Self {
        CanonicalEndSpace {
            kernel: false,
            scattered,
        }
    }

    pub fn is_countable(&self) -> bool {
        !self.kernel
    }

    pub fn is_finite(&self) -> bool {
        !self.kernel && !matches!(self.scattered, Scattered::O { .. })
    }

    pub(crate) fn merge(self, other: CanonicalEndSpace) -> CanonicalEndSpace {
        CanonicalEndSpace {
            kernel: self.kernel || other.kernel,
            scattered: self.scattered.merge(other.scattered),
        }
    }

    /// One-point compactification of countably many copies; `None` when the
    /// result leaves the canonical fragment.
    pub(crate) fn seq_compactify(&self) -> Option<CanonicalEndSpace> {
        match (self.kernel, &self.scattered) {
            (true, Scattered::Empty) => Some(Self::cantor()),
            (true, _) => None,
            (false, Scattered::Empty) => Some(Self::discrete(1)),
            (false, Scattered::Discrete(_)) => Some(Self::scattered_o(1, Ordinal::one())),
            (false, Scattered::O { alpha, .. }) => Some(Self::scattered_o(1, alpha.succ())),
        }
    }

    /// Cantor–Bendixson rank of the space.
    pub fn rank(&self) -> Ordinal {
        self.scattered.rank()
    }

    /// The derived set, computed on the canonical form directly.
    pub fn derivative(&self) -> CanonicalEndSpace {
        CanonicalEndSpace {
            kernel: self.kernel,
            scattered: self.scattered.derivative(),
        }
    }

    /// Size of the largest finite topologically distinguished subset.
    ///
    /// Points off the kernel are classified up to germ by their rank, and
    /// every rank below the top occurs infinitely often, so the only finite
    /// germ class is the top rank of the scattered part.
    pub fn td_max(&self) -> u64 {
        self.scattered.top_count()
    }

    pub fn isolated_count(&self) -> Count {
        self.scattered.isolated()
    }

    /// A representative expression.
    pub fn embed(&self) -> EndSpace {
        if self.kernel {
            sorted_union([EndSpace::Cantor, self.scattered.embed()])
        } else {
            self.scattered.embed()
        }
    }
}

impl fmt::Display for Scattered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scattered::Empty => f.write_str("empty"),
            Scattered::Discrete(m) => write!(f, "D({m})"),
            Scattered::O { n, alpha } => write!(f, "O({n}, {alpha})"),
        }
    }
}

impl fmt::Display for CanonicalEndSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kernel, &self.scattered) {
            (true, Scattered::Empty) => f.write_str("C"),
            (true, s) => write!(f, "C ⊔ {s}"),
            (false, s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    Canonical(CanonicalEndSpace),
    /// Outside the decidable fragment; holds the fully reduced expression.
    Irreducible(EndSpace),
}

impl NormalForm {
    pub fn canonical(&self) -> Option<&CanonicalEndSpace> {
        match self {
            NormalForm::Canonical(c) => Some(c),
            NormalForm::Irreducible(_) => None,
        }
    }

    /// Expression that normalizes back to `self`.
    pub fn embed(&self) -> EndSpace {
        match self {
            NormalForm::Canonical(c) => c.embed(),
            NormalForm::Irreducible(e) => e.clone(),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Canonical(c) => write!(f, "{c}"),
            NormalForm::Irreducible(e) => write!(f, "irreducible {e}"),
        }
    }
}

pub(crate) fn interval_canonical(b: &Ordinal) -> CanonicalEndSpace {
    match b.as_finite() {
        Some(n) => CanonicalEndSpace::discrete(n.checked_add(1).expect("count overflow")),
        // [0, w^g*n + rest] is n copies of [0, w^g] plus lower-rank material
        None => CanonicalEndSpace::scattered_o(
            b.leading_coefficient().unwrap(),
            b.leading_exponent().unwrap().clone(),
        ),
    }
}

/// Normal form by bottom-up evaluation.
pub fn normalize(e: &EndSpace) -> NormalForm {
    use NormalForm::*;
    match e {
        EndSpace::Empty => Canonical(CanonicalEndSpace::empty()),
        EndSpace::Pt => Canonical(CanonicalEndSpace::discrete(1)),
        EndSpace::Cantor => Canonical(CanonicalEndSpace::cantor()),
        EndSpace::Interval(b) => Canonical(interval_canonical(b)),
        EndSpace::Lim(l) => Canonical(CanonicalEndSpace::scattered_o(1, l.get().clone())),
        EndSpace::Union(children) => {
            let mut merged = CanonicalEndSpace::empty();
            let mut stuck = Vec::new();
            for c in children {
                match normalize(c) {
                    Canonical(k) => merged = merged.merge(k),
                    Irreducible(EndSpace::Union(parts)) => {
                        // a reduced union is stuck sequences plus the embedding
                        // of one canonical remainder
                        for p in parts {
                            match p {
                                EndSpace::Seq(_) => stuck.push(p),
                                other => {
                                    let Canonical(k) = normalize(&other) else {
                                        unreachable!("remainder piece is canonical")
                                    };
                                    merged = merged.merge(k);
                                }
                            }
                        }
                    }
                    Irreducible(r) => stuck.push(r),
                }
            }
            if stuck.is_empty() {
                Canonical(merged)
            } else {
                stuck.push(merged.embed());
                Irreducible(sorted_union(stuck))
            }
        }
        EndSpace::Seq(child) => match normalize(child) {
            Canonical(k) => match k.seq_compactify() {
                Some(r) => Canonical(r),
                None => Irreducible(EndSpace::Seq(Box::new(k.embed()))),
            },
            Irreducible(r) => Irreducible(EndSpace::Seq(Box::new(r))),
        },
    }
}

/// Structural derived set.
pub fn cb_derivative(e: &EndSpace) -> EndSpace {
    match e {
        EndSpace::Empty | EndSpace::Pt => EndSpace::Empty,
        EndSpace::Cantor => EndSpace::Cantor,
        EndSpace::Interval(b) => {
            // derived([0, b]) is order-isomorphic to [1, b/w]
            let q = b.div_omega();
            match q.as_finite() {
                Some(0) => EndSpace::Empty,
                Some(1) => EndSpace::Pt,
                Some(m) => EndSpace::Interval(Ordinal::nat(m - 1)),
                None => EndSpace::Interval(q),
            }
        }
        EndSpace::Union(cs) => EndSpace::union(cs.iter().map(cb_derivative)),
        EndSpace::Seq(c) => {
            let d = cb_derivative(c);
            if d.is_empty() {
                // the compactification point is a limit of the deleted points
                if c.is_empty() {
                    EndSpace::Empty
                } else {
                    EndSpace::Pt
                }
            } else {
                EndSpace::Seq(Box::new(d))
            }
        }
        // Each layer [0, w^(l[i])] loses one rank; the shifted exponents have
        // the same supremum l, so the compactification is again of this shape.
        EndSpace::Lim(l) => EndSpace::Lim(l.clone()),
    }
}

/// Cantor–Bendixson rank; the filtration stabilizes at the perfect kernel.
pub fn cb_rank(e: &EndSpace) -> Result<Ordinal, EndSpaceError> {
    match normalize(e) {
        NormalForm::Canonical(c) => Ok(c.rank()),
        NormalForm::Irreducible(r) => Err(EndSpaceError::RankUndecidable(r)),
    }
}

/// Supremum of the ranks of non-kernel points, by structural recursion.
///
/// On canonicalizable expressions this is the Cantor–Bendixson rank.
pub fn structural_rank(e: &EndSpace) -> Ordinal {
    match e {
        EndSpace::Empty | EndSpace::Cantor => Ordinal::zero(),
        EndSpace::Pt => Ordinal::one(),
        EndSpace::Interval(b) => match b.leading_exponent() {
            Some(g) if !b.is_finite() => g.succ(),
            _ => Ordinal::one(),
        },
        EndSpace::Lim(l) => l.get().succ(),
        EndSpace::Union(cs) => cs.iter().map(structural_rank).max().unwrap_or_default(),
        EndSpace::Seq(c) => {
            let inner = structural_rank(c);
            if c.contains_cantor() {
                inner
            } else {
                inner.succ()
            }
        }
    }
}

pub fn isolated_count(e: &EndSpace) -> Count {
    match e {
        EndSpace::Empty | EndSpace::Cantor => Count::Finite(0),
        EndSpace::Pt => Count::Finite(1),
        EndSpace::Interval(b) => match b.as_finite() {
            Some(n) => Count::Finite(n + 1),
            None => Count::Omega,
        },
        EndSpace::Union(cs) => cs
            .iter()
            .map(isolated_count)
            .fold(Count::Finite(0), |a, b| a + b),
        EndSpace::Seq(c) if c.is_empty() => Count::Finite(1),
        EndSpace::Seq(c) => {
            if isolated_count(c).is_zero() {
                Count::Finite(0)
            } else {
                Count::Omega
            }
        }
        EndSpace::Lim(_) => Count::Omega,
    }
}

/// Largest finite topologically distinguished subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TdBound {
    Exact(u64),
    /// Certified lower bound; the exact value is not computed.
    AtLeast(u64),
}

impl TdBound {
    /// Whether the space is certainly `TD_{>=n}`.
    pub fn certifies(self, n: u64) -> bool {
        match self {
            TdBound::Exact(m) | TdBound::AtLeast(m) => m >= n,
        }
    }

    pub fn value(self) -> u64 {
        match self {
            TdBound::Exact(m) | TdBound::AtLeast(m) => m,
        }
    }
}

impl fmt::Display for TdBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdBound::Exact(m) => write!(f, "{m}"),
            TdBound::AtLeast(m) => write!(f, ">={m}"),
        }
    }
}

pub fn td_max(e: &EndSpace) -> TdBound {
    td_of(&normalize(e))
}

pub(crate) fn td_of(nf: &NormalForm) -> TdBound {
    match nf {
        NormalForm::Canonical(c) => TdBound::Exact(c.td_max()),
        NormalForm::Irreducible(r) => TdBound::AtLeast(irreducible_td_lower_bound(r)),
    }
}

/// The top-rank points of the canonical summands form a finite germ class
/// as long as no point of the irreducible summands has that rank.
fn irreducible_td_lower_bound(r: &EndSpace) -> u64 {
    let children: &[EndSpace] = match r {
        EndSpace::Union(cs) => cs,
        _ => return 0,
    };
    let mut canon = CanonicalEndSpace::empty();
    let mut stuck_rank = Ordinal::zero();
    for c in children {
        match normalize(c) {
            NormalForm::Canonical(k) => canon = canon.merge(k),
            NormalForm::Irreducible(_) => stuck_rank = stuck_rank.max(structural_rank(c)),
        }
    }
    if canon.scattered.rank() > stuck_rank {
        canon.scattered.top_count()
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "Yes",
            Decision::No => "No",
            Decision::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceInvariants {
    pub countable: bool,
    pub isolated_count: Count,
    /// `None` when the expression is irreducible.
    pub scattered_rank: Option<Ordinal>,
    pub has_kernel: bool,
    pub td_max: TdBound,
}

pub fn invariants(e: &EndSpace) -> SpaceInvariants {
    let nf = normalize(e);
    let countable = e.is_countable();
    SpaceInvariants {
        countable,
        isolated_count: isolated_count(e),
        scattered_rank: nf.canonical().map(CanonicalEndSpace::rank),
        has_kernel: !countable,
        td_max: td_of(&nf),
    }
}

pub fn is_homeomorphic(a: &EndSpace, b: &EndSpace) -> Decision {
    let (na, nb) = (normalize(a), normalize(b));
    match (&na, &nb) {
        (NormalForm::Canonical(x), NormalForm::Canonical(y)) => {
            return if x == y { Decision::Yes } else { Decision::No };
        }
        (NormalForm::Irreducible(x), NormalForm::Irreducible(y)) if x == y => {
            return Decision::Yes;
        }
        _ => {}
    }
    let (ia, ib) = (invariants(a), invariants(b));
    let rank_differs = matches!(
        (&ia.scattered_rank, &ib.scattered_rank),
        (Some(x), Some(y)) if x != y
    );
    if ia.countable != ib.countable
        || ia.has_kernel != ib.has_kernel
        || ia.isolated_count != ib.isolated_count
        || rank_differs
    {
        Decision::No
    } else {
        Decision::Unknown
    }
}

impl fmt::Display for EndSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndSpace::Empty => f.write_str("empty"),
            EndSpace::Pt => f.write_str("pt"),
            EndSpace::Cantor => f.write_str("cantor"),
            EndSpace::Interval(b) => write!(f, "I({b})"),
            EndSpace::Lim(l) => write!(f, "lim1pc({})", l.get()),
            EndSpace::Seq(c) => write!(f, "seq1pc({c})"),
            EndSpace::Union(cs) => {
                f.write_str("U(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
