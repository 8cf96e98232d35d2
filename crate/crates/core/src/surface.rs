//! Surface descriptors: genus, boundary count and an end-space whose points
//! are marked planar or nonplanar.

use std::fmt;

use thiserror::Error;

use crate::endspace::{
    self, is_homeomorphic, Count, Decision, EndSpace, LimitOrdinal, NormalForm, SpaceInvariants,
};
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Planar,
    Nonplanar,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Planar => "p",
            Mark::Nonplanar => "np",
        })
    }
}

/// End-space expression with a mark on every leaf and on every added
/// compactification point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MarkedEnds {
    Empty,
    Pt(Mark),
    Interval(Ordinal, Mark),
    Cantor(Mark),
    Union(Vec<MarkedEnds>),
    Seq {
        child: Box<MarkedEnds>,
        point: Mark,
    },
    /// `body` marks the compactified copies, `point` the added point.
    Lim {
        limit: LimitOrdinal,
        body: Mark,
        point: Mark,
    },
}

impl MarkedEnds {
    pub fn unmarked(&self) -> EndSpace {
        match self {
            MarkedEnds::Empty => EndSpace::Empty,
            MarkedEnds::Pt(_) => EndSpace::Pt,
            MarkedEnds::Interval(b, _) => EndSpace::Interval(b.clone()),
            MarkedEnds::Cantor(_) => EndSpace::Cantor,
            MarkedEnds::Union(cs) => EndSpace::Union(cs.iter().map(Self::unmarked).collect()),
            MarkedEnds::Seq { child, .. } => EndSpace::Seq(Box::new(child.unmarked())),
            MarkedEnds::Lim { limit, .. } => EndSpace::Lim(limit.clone()),
        }
    }

    /// Every mark in the expression, in traversal order.
    fn marks(&self, out: &mut Vec<Mark>) {
        match self {
            MarkedEnds::Empty => {}
            MarkedEnds::Pt(m) | MarkedEnds::Interval(_, m) | MarkedEnds::Cantor(m) => out.push(*m),
            MarkedEnds::Union(cs) => cs.iter().for_each(|c| c.marks(out)),
            MarkedEnds::Seq { child, point } => {
                child.marks(out);
                out.push(*point);
            }
            MarkedEnds::Lim { body, point, .. } => {
                out.push(*body);
                out.push(*point);
            }
        }
    }

    pub fn has_nonplanar(&self) -> bool {
        let mut marks = Vec::new();
        self.marks(&mut marks);
        marks.contains(&Mark::Nonplanar)
    }

    /// The common mark when every mark agrees.
    pub fn uniform_mark(&self) -> Option<Mark> {
        let mut marks = Vec::new();
        self.marks(&mut marks);
        let first = *marks.first()?;
        marks.iter().all(|m| *m == first).then_some(first)
    }

    /// The smallest mark for a compactification point over `child` that
    /// keeps the nonplanar set closed.
    pub fn forced_point_mark(child: &MarkedEnds) -> Mark {
        if child.has_nonplanar() {
            Mark::Nonplanar
        } else {
            Mark::Planar
        }
    }

    fn is_empty(&self) -> bool {
        self.unmarked().is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Genus {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceDescriptor {
    pub genus: Genus,
    pub boundary: u64,
    pub ends: MarkedEnds,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("nonplanar set is not closed: the compactification point at {path} is a limit of nonplanar ends but is marked planar")]
    ClosednessViolation { path: String },
    #[error("genus is {genus} but the end-space {} nonplanar ends", if *.has_nonplanar { "has" } else { "has no" })]
    GenusMarkMismatch { genus: Genus, has_nonplanar: bool },
}

fn check_closed(e: &MarkedEnds, path: &mut String) -> Result<(), ValidationError> {
    match e {
        MarkedEnds::Union(cs) => {
            for (i, c) in cs.iter().enumerate() {
                let len = path.len();
                path.push_str(&format!(".U[{i}]"));
                check_closed(c, path)?;
                path.truncate(len);
            }
            Ok(())
        }
        MarkedEnds::Seq { child, point } => {
            if *point == Mark::Planar && child.has_nonplanar() {
                return Err(ValidationError::ClosednessViolation { path: path.clone() });
            }
            let len = path.len();
            path.push_str(".seq1pc");
            check_closed(child, path)?;
            path.truncate(len);
            Ok(())
        }
        MarkedEnds::Lim { body, point, .. } => {
            if *point == Mark::Planar && *body == Mark::Nonplanar {
                return Err(ValidationError::ClosednessViolation { path: path.clone() });
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

impl SurfaceDescriptor {
    pub fn new(genus: Genus, boundary: u64, ends: MarkedEnds) -> Self {
        SurfaceDescriptor {
            genus,
            boundary,
            ends,
        }
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        check_closed(&self.ends, &mut String::from("ends"))?;
        let has_nonplanar = self.ends.has_nonplanar();
        if has_nonplanar != (self.genus == Genus::Infinite) {
            return Err(ValidationError::GenusMarkMismatch {
                genus: self.genus,
                has_nonplanar,
            });
        }
        Ok(())
    }

    pub fn unmarked_ends(&self) -> EndSpace {
        self.ends.unmarked()
    }

    /// Infinite genus, or infinitely many ends.
    pub fn is_infinite_type(&self) -> bool {
        if self.genus == Genus::Infinite {
            return true;
        }
        match endspace::normalize(&self.unmarked_ends()) {
            NormalForm::Canonical(c) => !c.is_finite(),
            NormalForm::Irreducible(_) => true,
        }
    }

    pub fn punctures(&self) -> Count {
        punctures_of(&self.ends)
    }

    pub fn has_mixed_end(&self) -> bool {
        has_mixed_end(&self.ends)
    }

    pub fn invariants(&self) -> SurfaceInvariants {
        SurfaceInvariants {
            genus: self.genus,
            boundary: self.boundary,
            punctures: self.punctures(),
            mixed_end: self.has_mixed_end(),
            ends: endspace::invariants(&self.unmarked_ends()),
        }
    }
}

/// Planar isolated ends.
///
/// Isolation is taken in the whole end-space. For planar ends this agrees
/// with isolation in the subspace of planar ends, since a planar end has a
/// neighbourhood without nonplanar ends.
pub fn punctures_of(e: &MarkedEnds) -> Count {
    match e {
        MarkedEnds::Empty | MarkedEnds::Cantor(_) => Count::Finite(0),
        MarkedEnds::Pt(Mark::Planar) => Count::Finite(1),
        MarkedEnds::Interval(b, Mark::Planar) => match b.as_finite() {
            Some(n) => Count::Finite(n + 1),
            None => Count::Omega,
        },
        MarkedEnds::Pt(Mark::Nonplanar) | MarkedEnds::Interval(_, Mark::Nonplanar) => {
            Count::Finite(0)
        }
        MarkedEnds::Union(cs) => cs
            .iter()
            .map(punctures_of)
            .fold(Count::Finite(0), |a, b| a + b),
        MarkedEnds::Seq { child, point } if child.is_empty() => {
            punctures_of(&MarkedEnds::Pt(*point))
        }
        MarkedEnds::Seq { child, .. } => {
            if punctures_of(child).is_zero() {
                Count::Finite(0)
            } else {
                Count::Omega
            }
        }
        MarkedEnds::Lim { body, .. } => match body {
            Mark::Planar => Count::Omega,
            Mark::Nonplanar => Count::Finite(0),
        },
    }
}

/// A nonplanar compactification point over material containing punctures.
pub fn has_mixed_end(e: &MarkedEnds) -> bool {
    match e {
        MarkedEnds::Union(cs) => cs.iter().any(has_mixed_end),
        MarkedEnds::Seq { child, point } => {
            (*point == Mark::Nonplanar && !punctures_of(child).is_zero()) || has_mixed_end(child)
        }
        MarkedEnds::Lim { body, point, .. } => {
            *point == Mark::Nonplanar && *body == Mark::Planar
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus: Genus,
    pub boundary: u64,
    pub punctures: Count,
    pub mixed_end: bool,
    pub ends: SpaceInvariants,
}

/// Splits the top-level summands into nonplanar and planar parts when every
/// summand is uniformly marked, so the nonplanar set is clopen.
fn clopen_split(e: &MarkedEnds) -> Option<(EndSpace, EndSpace)> {
    let summands: Vec<&MarkedEnds> = match e {
        MarkedEnds::Union(cs) => cs.iter().collect(),
        other => vec![other],
    };
    let mut nonplanar = Vec::new();
    let mut planar = Vec::new();
    for s in summands {
        match s.uniform_mark() {
            Some(Mark::Nonplanar) => nonplanar.push(s.unmarked()),
            Some(Mark::Planar) => planar.push(s.unmarked()),
            None if s.is_empty() => {}
            None => return None,
        }
    }
    Some((EndSpace::union(nonplanar), EndSpace::union(planar)))
}

pub fn surfaces_homeomorphic(a: &SurfaceDescriptor, b: &SurfaceDescriptor) -> Decision {
    if a.genus != b.genus || a.boundary != b.boundary {
        return Decision::No;
    }
    if a.ends == b.ends {
        return Decision::Yes;
    }
    let unmarked = is_homeomorphic(&a.unmarked_ends(), &b.unmarked_ends());
    if unmarked == Decision::No || a.punctures() != b.punctures() {
        return Decision::No;
    }
    if a.genus != Genus::Infinite {
        // no nonplanar ends on either side
        return unmarked;
    }
    match (clopen_split(&a.ends), clopen_split(&b.ends)) {
        (Some((xa, ra)), Some((xb, rb))) => {
            match (is_homeomorphic(&xa, &xb), is_homeomorphic(&ra, &rb)) {
                (Decision::No, _) | (_, Decision::No) => Decision::No,
                (Decision::Yes, Decision::Yes) => Decision::Yes,
                _ => Decision::Unknown,
            }
        }
        _ => Decision::Unknown,
    }
}

impl fmt::Display for MarkedEnds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarkedEnds::Empty => f.write_str("empty"),
            MarkedEnds::Pt(m) => write!(f, "pt!{m}"),
            MarkedEnds::Interval(b, m) => write!(f, "I({b})!{m}"),
            MarkedEnds::Cantor(m) => write!(f, "cantor!{m}"),
            MarkedEnds::Seq { child, point } => write!(f, "seq1pc({child}; {point})"),
            MarkedEnds::Lim { limit, body, point } => {
                write!(f, "lim1pc({}; {point})!{body}", limit.get())
            }
            MarkedEnds::Union(cs) => {
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

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "surface(genus={}, boundary={}, ends={})",
            self.genus, self.boundary, self.ends
        )
    }
}
