//! Countable ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of terms `w^e * n` with strictly
//! decreasing exponents and positive coefficients. The representation is
//! unique, so structural equality is ordinal equality and the derived
//! `Hash` is sound.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// One Cantor-normal-form term `w^exponent * coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("coefficient of term {index} is zero")]
    ZeroCoefficient { index: usize },
    #[error("exponents are not strictly decreasing at term {index}")]
    NotDecreasing { index: usize },
    #[error("ordinal {0} is not a limit ordinal")]
    NotLimit(Ordinal),
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    pub fn nat(n: u64) -> Self {
        Self::omega_pow_mul(Self::zero(), n)
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Self::omega_pow_mul(exponent, 1)
    }

    /// `w^exponent * n`; zero when `n == 0`.
    pub fn omega_pow_mul(exponent: Ordinal, n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient: n,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, checking the
    /// normal-form invariants.
    pub fn from_terms<I>(terms: I) -> Result<Self, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (index, (exponent, coefficient)) in terms.into_iter().enumerate() {
            if coefficient == 0 {
                return Err(OrdinalError::ZeroCoefficient { index });
            }
            if let Some(prev) = out.last() {
                if prev.exponent <= exponent {
                    return Err(OrdinalError::NotDecreasing { index });
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(Ordinal { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn leading_coefficient(&self) -> Option<u64> {
        self.terms.first().map(|t| t.coefficient)
    }

    /// True for ordinals of the form `w^e * n` (a single term).
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Everything after the leading term.
    pub fn tail(&self) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn kind(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.kind() == OrdinalKind::Limit
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Immediate predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if self.kind() != OrdinalKind::Successor {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a finite term");
        if last.coefficient == 1 {
            terms.pop();
        } else {
            last.coefficient -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Ordinal sum `self + rhs`. Terms of `self` below the leading exponent
    /// of `rhs` are absorbed.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = head.coefficient;
        for t in &self.terms {
            match t.exponent.cmp(&head.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged = merged
                        .checked_add(t.coefficient)
                        .expect("ordinal coefficient overflow");
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.push(Term {
            exponent: head.exponent.clone(),
            coefficient: merged,
        });
        terms.extend(rhs.terms.iter().skip(1).cloned());
        Ordinal { terms }
    }

    /// Left quotient by `w`: the unique `q` with `self = w*q + r`, `r` finite.
    ///
    /// The limit ordinals in `(0, self]` are exactly `w*x` for `1 <= x <= q`,
    /// so the derived set of `[0, self]` is order-isomorphic to `[1, q]`.
    /// Termwise, `w^g * n` becomes `w^(g-1) * n` for finite `g >= 1` and is
    /// unchanged for infinite `g` (since `1 + g = g` there).
    pub fn div_omega(&self) -> Ordinal {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.exponent.is_zero())
            .map(|t| {
                let exponent = match t.exponent.as_finite() {
                    Some(e) => Ordinal::nat(e - 1),
                    None => t.exponent.clone(),
                };
                Term {
                    exponent,
                    coefficient: t.coefficient,
                }
            })
            .collect();
        Ordinal { terms }
    }

    /// Element `i` of the canonical fundamental sequence of a limit ordinal.
    ///
    /// Writing `self = rho + w^g`, the sequence is `rho + w^d * i` when
    /// `g = d + 1`, and `rho + w^(g[i])` when `g` is itself a limit.
    pub fn fundamental(&self, i: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        let mut rho = self.terms.clone();
        let last = rho.pop().expect("limit ordinal is nonzero");
        if last.coefficient > 1 {
            rho.push(Term {
                exponent: last.exponent.clone(),
                coefficient: last.coefficient - 1,
            });
        }
        let rho = Ordinal { terms: rho };
        let step = match last.exponent.pred() {
            Some(d) => Ordinal::omega_pow_mul(d, i),
            None => Ordinal::omega_pow(last.exponent.fundamental(i)?),
        };
        Ok(rho.add(&step))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .cmp(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

/// Maximum of a nonempty list together with how often it occurs.
pub fn max_of(list: &[Ordinal]) -> Option<(Ordinal, usize)> {
    let max = list.iter().max()?;
    let count = list.iter().filter(|o| *o == max).count();
    Some((max.clone(), count))
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ordinal(self, f, " + ")
    }
}

fn write_ordinal(o: &Ordinal, f: &mut fmt::Formatter<'_>, sep: &str) -> fmt::Result {
    if o.is_zero() {
        return f.write_str("0");
    }
    for (i, t) in o.terms.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if t.exponent.is_zero() {
            write!(f, "{}", t.coefficient)?;
            continue;
        }
        f.write_str("w")?;
        if t.exponent != Ordinal::one() {
            f.write_str("^")?;
            if let Some(e) = t.exponent.as_finite() {
                write!(f, "{e}")?;
            } else if t.exponent == Ordinal::omega() {
                f.write_str("w")?;
            } else {
                f.write_str("(")?;
                write_ordinal(&t.exponent, f, "+")?;
                f.write_str(")")?;
            }
        }
        if t.coefficient != 1 {
            write!(f, "*{}", t.coefficient)?;
        }
    }
    Ok(())
}
