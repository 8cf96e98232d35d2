//! Random generators and independent oracles shared by the integration
//! tests. Nothing here calls the normalizer.

#![allow(dead_code)]

use infsurf::endspace::{EndSpace, LimitOrdinal};
use infsurf::ordinal::Ordinal;
use infsurf::surface::{Genus, Mark, MarkedEnds, SurfaceDescriptor};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// w^2*a + w*b + c with small coefficients.
pub fn ordinal_below_w3(rng: &mut StdRng) -> Ordinal {
    let (a, b, c) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
    Ordinal::omega_pow_mul(Ordinal::nat(2), a)
        .add(&Ordinal::omega_pow_mul(Ordinal::one(), b))
        .add(&Ordinal::nat(c))
}

pub fn nonzero_below_w3(rng: &mut StdRng) -> Ordinal {
    loop {
        let a = ordinal_below_w3(rng);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn limit_below_w3(rng: &mut StdRng) -> Ordinal {
    loop {
        let (a, b) = (rng.gen_range(0..4), rng.gen_range(0..4));
        let l = Ordinal::omega_pow_mul(Ordinal::nat(2), a)
            .add(&Ordinal::omega_pow_mul(Ordinal::one(), b));
        if !l.is_zero() {
            return l;
        }
    }
}

/// w^a for a random a below w^3, possibly with a nested infinite exponent.
pub fn interval_bound(rng: &mut StdRng) -> Ordinal {
    match rng.gen_range(0..4) {
        0 => Ordinal::nat(rng.gen_range(0..6)),
        1 => Ordinal::omega_pow_mul(ordinal_below_w3(rng), rng.gen_range(1..4)),
        _ => Ordinal::omega_pow_mul(ordinal_below_w3(rng), rng.gen_range(1..3))
            .add(&Ordinal::omega_pow_mul(Ordinal::nat(rng.gen_range(0..3)), rng.gen_range(0..3)))
            .add(&Ordinal::nat(rng.gen_range(0..3))),
    }
}

pub fn lim(l: Ordinal) -> EndSpace {
    EndSpace::Lim(LimitOrdinal::new(l).expect("limit"))
}

/// Random expression tree. `cantor` controls whether Cantor leaves occur.
pub fn endspace(rng: &mut StdRng, depth: u32, cantor: bool) -> EndSpace {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        match rng.gen_range(0..10) {
            0 => EndSpace::Pt,
            1 if cantor => EndSpace::Cantor,
            2 => lim(limit_below_w3(rng)),
            3 if rng.gen_bool(0.2) => EndSpace::Empty,
            _ => EndSpace::Interval(interval_bound(rng)),
        }
    } else if rng.gen_bool(0.6) {
        let n = rng.gen_range(2..4);
        EndSpace::Union((0..n).map(|_| endspace(rng, depth - 1, cantor)).collect())
    } else {
        loop {
            let c = endspace(rng, depth - 1, cantor);
            if !is_empty(&c) {
                return EndSpace::Seq(Box::new(c));
            }
        }
    }
}

pub fn is_empty(e: &EndSpace) -> bool {
    match e {
        EndSpace::Empty => true,
        EndSpace::Union(cs) => cs.iter().all(is_empty),
        _ => false,
    }
}

pub fn has_cantor(e: &EndSpace) -> bool {
    match e {
        EndSpace::Cantor => true,
        EndSpace::Union(cs) => cs.iter().any(has_cantor),
        EndSpace::Seq(c) => has_cantor(c),
        _ => false,
    }
}

/// (β + 1)·w for a successor β + 1.
fn times_omega(succ: &Ordinal) -> Ordinal {
    Ordinal::omega_pow(succ.leading_exponent().expect("nonzero").succ())
}

/// β with e ≅ [0, β] in the order topology, for countable nonempty e.
/// Disjoint pieces are laid side by side; a convergent sequence of copies
/// of [0, β] is [0, (β+1)·w].
pub fn order_type(e: &EndSpace) -> Option<Ordinal> {
    match e {
        EndSpace::Empty => None,
        EndSpace::Cantor => panic!("uncountable"),
        EndSpace::Pt => Some(Ordinal::zero()),
        EndSpace::Interval(b) => Some(b.clone()),
        EndSpace::Lim(l) => Some(Ordinal::omega_pow(l.get().clone())),
        EndSpace::Union(cs) => {
            let mut acc: Option<Ordinal> = None;
            for c in cs {
                if let Some(b) = order_type(c) {
                    acc = Some(match acc {
                        None => b,
                        Some(a) => a.succ().add(&b),
                    });
                }
            }
            acc
        }
        EndSpace::Seq(c) => Some(times_omega(&order_type(c)?.succ())),
    }
}

/// Mazurkiewicz–Sierpiński class of [0, β]: (n, α) with α = 0 meaning n
/// isolated points.
pub fn ms_class(beta: &Ordinal) -> (u64, Ordinal) {
    match beta.as_finite() {
        Some(m) => (m + 1, Ordinal::zero()),
        None => (
            beta.leading_coefficient().unwrap(),
            beta.leading_exponent().unwrap().clone(),
        ),
    }
}

/// (α, n): the points of maximal Cantor–Bendixson rank α + 1 and how many
/// there are, computed by tracking where those points sit.
pub fn point_rank_profile(e: &EndSpace) -> Option<(Ordinal, u64)> {
    match e {
        EndSpace::Empty => None,
        EndSpace::Cantor => panic!("uncountable"),
        EndSpace::Pt => Some((Ordinal::zero(), 1)),
        EndSpace::Interval(b) => {
            if b.is_zero() {
                return Some((Ordinal::zero(), 1));
            }
            // the points w^g * j, j = 1..n, for the leading term w^g * n
            let t = &b.terms()[0];
            if t.exponent().is_zero() {
                Some((Ordinal::zero(), t.coefficient() + 1))
            } else {
                Some((t.exponent().clone(), t.coefficient()))
            }
        }
        EndSpace::Lim(l) => Some((l.get().clone(), 1)),
        EndSpace::Union(cs) => {
            let mut best: Option<(Ordinal, u64)> = None;
            for c in cs {
                if let Some((a, n)) = point_rank_profile(c) {
                    best = match best {
                        None => Some((a, n)),
                        Some((b, _)) if a > b => Some((a, n)),
                        Some((b, m)) if a == b => Some((b, m + n)),
                        keep => keep,
                    };
                }
            }
            best
        }
        EndSpace::Seq(c) => point_rank_profile(c).map(|(a, _)| (a.succ(), 1)),
    }
}

/// Random descriptor whose nonplanar set is closed and whose genus matches
/// the marks.
pub fn marked(rng: &mut StdRng, depth: u32, np_bias: f64) -> MarkedEnds {
    let mark = |rng: &mut StdRng| {
        if rng.gen_bool(np_bias) {
            Mark::Nonplanar
        } else {
            Mark::Planar
        }
    };
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        match rng.gen_range(0..9) {
            0 | 1 => MarkedEnds::Pt(mark(rng)),
            2 => MarkedEnds::Cantor(mark(rng)),
            3 => {
                let body = mark(rng);
                let point = if body == Mark::Nonplanar { body } else { mark(rng) };
                MarkedEnds::Lim {
                    limit: LimitOrdinal::new(limit_below_w3(rng)).unwrap(),
                    body,
                    point,
                }
            }
            _ => MarkedEnds::Interval(interval_bound(rng), mark(rng)),
        }
    } else if rng.gen_bool(0.6) {
        let n = rng.gen_range(2..4);
        MarkedEnds::Union((0..n).map(|_| marked(rng, depth - 1, np_bias)).collect())
    } else {
        let child = marked(rng, depth - 1, np_bias);
        let point = if MarkedEnds::forced_point_mark(&child) == Mark::Nonplanar {
            Mark::Nonplanar
        } else {
            mark(rng)
        };
        MarkedEnds::Seq {
            child: Box::new(child),
            point,
        }
    }
}

pub fn descriptor(rng: &mut StdRng) -> SurfaceDescriptor {
    let bias = [0.0, 0.1, 0.3, 0.6][rng.gen_range(0..4)];
    let depth = rng.gen_range(0..5);
    let ends = marked(rng, depth, bias);
    let genus = if ends.has_nonplanar() {
        Genus::Infinite
    } else {
        Genus::Finite([0, 0, 1, 2, 5][rng.gen_range(0..5)])
    };
    SurfaceDescriptor::new(genus, 0, ends)
}

pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * laplace_det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all j×j minors.
pub fn minor_gcd(m: &[Vec<BigInt>], j: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in subsets(rows, j) {
        for cs in subsets(cols, j) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            g = g.gcd(&laplace_det(&sub));
        }
    }
    g.abs()
}

/// Partitions of d into parts of size at most p, by enumeration.
pub fn partitions(d: u64, max_part: u64) -> u64 {
    fn go(rest: u64, cap: u64) -> u64 {
        if rest == 0 {
            return 1;
        }
        (1..=cap.min(rest)).map(|part| go(rest - part, part)).sum()
    }
    go(d, max_part)
}
