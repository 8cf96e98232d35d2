//! Exact integer linear algebra: Smith normal form, abelianization of finite
//! presentations, and the small group-theoretic computations built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("rows have different lengths")]
    RaggedMatrix,
    #[error("relator {relator} uses generator {index}, but there are {generators} generators")]
    GeneratorOutOfRange {
        relator: usize,
        index: i32,
        generators: usize,
    },
    #[error("unknown preset `{0}` (expected braid, symmetric, spherical_braid or sl2z)")]
    UnknownPreset(String),
    #[error("parameter {n} out of range {min}..={max}")]
    BadParameter { n: u64, min: u64, max: u64 },
    #[error("{kind} is not tabulated for g = {g}")]
    OutOfTable { kind: HKind, g: u64 },
    #[error("maximum degree {0} is odd")]
    OddDegree(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows. An empty slice gives the 0×0 matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self, HomologyError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::with_cols(rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but with an explicit column count,
    /// so that matrices with no rows keep their width.
    pub fn with_cols<T: Clone + Into<BigInt>>(
        rows: &[Vec<T>],
        cols: usize,
    ) -> Result<Self, HomologyError> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(HomologyError::RaggedMatrix);
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().map(Into::into).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Fraction-free (Bareiss) determinant. Panics if not square.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row `dst` += k · row `src`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col `dst` += k · col `src`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `left · A · right` is the diagonal embedding of `diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

fn smallest_nonzero(m: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        let pivot = d.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..rows {
            let q = -(d.get(i, t) / &pivot);
            if !q.is_zero() {
                d.add_row(i, t, &q);
                left.add_row(i, t, &q);
            }
            clean &= d.get(i, t).is_zero();
        }
        for j in t + 1..cols {
            let q = -(d.get(t, j) / &pivot);
            if !q.is_zero() {
                d.add_col(j, t, &q);
                right.add_col(j, t, &q);
            }
            clean &= d.get(t, j).is_zero();
        }
        if !clean {
            continue;
        }

        let offender = (t + 1..rows)
            .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
        if let Some(i) = offender {
            d.add_row(t, i, &BigInt::one());
            left.add_row(t, i, &BigInt::one());
            continue;
        }
        if pivot.is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).collect();
    SnfResult {
        diagonal,
        left,
        right,
    }
}

/// Free rank plus torsion invariant factors t₁ | t₂ | ⋯, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            m => AbelianGroup {
                rank: 0,
                torsion: vec![BigUint::from(m)],
            },
        }
    }

    pub fn with_torsion(rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup {
            rank,
            torsion: torsion.iter().map(|&t| BigUint::from(t)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// The order if the group is finite.
    pub fn order(&self) -> Option<BigUint> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

/// Generators are 1-based; a negative index is an inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePresentation {
    generators: usize,
    relators: Vec<Vec<i32>>,
}

impl FinitePresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Result<Self, HomologyError> {
        for (r, word) in relators.iter().enumerate() {
            if let Some(&bad) = word
                .iter()
                .find(|&&x| x == 0 || x.unsigned_abs() as usize > generators)
            {
                return Err(HomologyError::GeneratorOutOfRange {
                    relator: r,
                    index: bad,
                    generators,
                });
            }
        }
        Ok(FinitePresentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    pub fn exponent_vector(&self, word: &[i32]) -> Vec<i64> {
        let mut v = vec![0i64; self.generators];
        for &x in word {
            v[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        v
    }

    /// One row per relator, one column per generator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|w| self.exponent_vector(w))
            .collect();
        IntegerMatrix::with_cols(&rows, self.generators).expect("rows have generator length")
    }

    pub fn abelianization(&self) -> Abelianization {
        Abelianization::of(self)
    }
}

pub fn abelianize(p: &FinitePresentation) -> AbelianGroup {
    p.abelianization().group
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens={}", self.generators)?;
        for r in &self.relators {
            let w: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "; rel={}", w.join(" "))?;
        }
        Ok(())
    }
}

/// The abelianization together with the coordinate change that sends a word
/// to its class.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub group: AbelianGroup,
    right: IntegerMatrix,
    diagonal: Vec<BigInt>,
}

impl Abelianization {
    fn of(p: &FinitePresentation) -> Self {
        let snf = smith_normal_form(&p.relation_matrix());
        let nonzero = snf.diagonal.iter().filter(|d| !d.is_zero()).count();
        let torsion = snf
            .diagonal
            .iter()
            .filter(|d| **d > BigInt::one())
            .map(|d| d.to_biguint().expect("diagonal is non-negative"))
            .collect();
        Abelianization {
            group: AbelianGroup {
                rank: p.generators - nonzero,
                torsion,
            },
            right: snf.right,
            diagonal: snf.diagonal,
        }
    }

    /// Class of an exponent vector: torsion residues in the order of
    /// `group.torsion`, followed by the free coordinates.
    pub fn image(&self, exponents: &[i64]) -> Vec<BigInt> {
        let n = self.right.rows();
        assert_eq!(exponents.len(), n, "exponent vector has wrong length");
        let coord = |j: usize| -> BigInt {
            (0..n)
                .map(|i| BigInt::from(exponents[i]) * self.right.get(i, j))
                .sum()
        };
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for j in 0..n {
            match self.diagonal.get(j) {
                Some(d) if d.is_zero() => free.push(coord(j)),
                Some(d) if d.is_one() => {}
                Some(d) => torsion.push(coord(j).mod_floor(d)),
                None => free.push(coord(j)),
            }
        }
        torsion.extend(free);
        torsion
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Braid,
    Symmetric,
    SphericalBraid,
    Sl2z,
}

impl FromStr for Preset {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "braid" => Ok(Preset::Braid),
            "symmetric" => Ok(Preset::Symmetric),
            "spherical_braid" => Ok(Preset::SphericalBraid),
            "sl2z" => Ok(Preset::Sl2z),
            other => Err(HomologyError::UnknownPreset(other.to_string())),
        }
    }
}

pub const MAX_STRANDS: u64 = 64;

fn check_strands(n: u64) -> Result<i32, HomologyError> {
    if (2..=MAX_STRANDS).contains(&n) {
        Ok(n as i32)
    } else {
        Err(HomologyError::BadParameter {
            n,
            min: 2,
            max: MAX_STRANDS,
        })
    }
}

fn braid_relators(n: i32) -> Vec<Vec<i32>> {
    let mut rels = Vec::new();
    for i in 1..n - 1 {
        rels.push(vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]);
    }
    for i in 1..n {
        for j in i + 2..n {
            rels.push(vec![i, j, -i, -j]);
        }
    }
    rels
}

/// Standard presentations. `n` is the number of strands or points and is
/// ignored for `sl2z`.
pub fn preset(kind: Preset, n: u64) -> Result<FinitePresentation, HomologyError> {
    if kind == Preset::Sl2z {
        // a = [[0,-1],[1,0]], b = [[0,-1],[1,1]]; a^4 = 1, a^2 = b^3
        return FinitePresentation::new(2, vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2, -2]]);
    }
    let n = check_strands(n)?;
    let mut rels = braid_relators(n);
    match kind {
        Preset::Braid => {}
        Preset::Symmetric => rels.extend((1..n).map(|i| vec![i, i])),
        Preset::SphericalBraid => {
            let mut w: Vec<i32> = (1..n).collect();
            w.extend((1..n).rev());
            rels.push(w);
        }
        Preset::Sl2z => unreachable!(),
    }
    FinitePresentation::new(n as usize - 1, rels)
}

pub fn preset_by_name(name: &str, n: u64) -> Result<FinitePresentation, HomologyError> {
    preset(name.parse()?, n)
}

/// (σ₁⋯σ_{n−1})ⁿ
pub fn full_twist_word(n: u64) -> Result<Vec<i32>, HomologyError> {
    let n = check_strands(n)?;
    Ok((0..n).flat_map(|_| 1..n).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistImage {
    pub n: u64,
    pub modulus: u64,
    /// In units where every σᵢ maps to 1.
    pub residue: u64,
}

/// Image of the full twist in the abelianization of the spherical braid
/// group, computed through the presentation.
pub fn full_twist_image(n: u64) -> Result<TwistImage, HomologyError> {
    let p = preset(Preset::SphericalBraid, n)?;
    let ab = p.abelianization();
    assert!(
        ab.group.rank == 0 && ab.group.torsion.len() == 1,
        "spherical braid abelianization is not finite cyclic: {}",
        ab.group
    );
    let modulus = BigInt::from(ab.group.torsion[0].clone());
    let mut sigma = vec![0i64; p.generators()];
    sigma[0] = 1;
    let unit = ab.image(&sigma)[0].clone();
    let twist = ab.image(&p.exponent_vector(&full_twist_word(n)?))[0].clone();
    let inverse = unit.extended_gcd(&modulus).x;
    let residue = (twist * inverse).mod_floor(&modulus);
    Ok(TwistImage {
        n,
        modulus: modulus.to_u64().expect("modulus fits"),
        residue: residue.to_u64().expect("residue fits"),
    })
}

/// k = n − 1 for even n and (n − 1)/2 for odd n.
pub fn k_of(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        n - 1
    } else {
        (n - 1) / 2
    }
}

/// The square Z/k → Z/2k (times 2) over the quotient of the spherical
/// braid group onto Z/2k sending each σᵢ to 1, checked on words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareReport {
    pub n: u64,
    pub k: u64,
    /// Every spherical braid relator maps to 0 in Z/2k.
    pub quotient_defined: bool,
    /// The full twist maps to 0, so the quotient factors through the
    /// mapping class group of the n-punctured sphere.
    pub twist_killed: bool,
    /// Each pure braid generator A_ij maps to 2 = 2 · 1.
    pub commutes: bool,
    pub top_surjective: bool,
    pub two_nonzero: bool,
}

impl SquareReport {
    pub fn verified(&self) -> bool {
        self.quotient_defined && self.twist_killed && self.commutes && self.top_surjective
    }
}

fn pure_braid_generator(i: i32, j: i32) -> Vec<i32> {
    // σ_{j−1}⋯σ_{i+1} σ_i² σ_{i+1}⁻¹⋯σ_{j−1}⁻¹
    let mut w: Vec<i32> = (i + 1..j).rev().collect();
    w.extend([i, i]);
    w.extend((i + 1..j).map(|x| -x));
    w
}

pub fn distinguished_square(n: u64) -> Result<SquareReport, HomologyError> {
    let p = preset(Preset::SphericalBraid, n)?;
    let k = k_of(n);
    let modulus = 2 * k as i64;
    let q = |w: &[i32]| -> i64 { p.exponent_vector(w).iter().sum::<i64>().rem_euclid(modulus) };
    let quotient_defined = p.relators().iter().all(|r| q(r) == 0);
    let twist_killed = q(&full_twist_word(n)?) == 0;
    let strands = n as i32;
    let mut commutes = true;
    let mut top_images = Vec::new();
    for i in 1..strands {
        for j in i + 1..=strands {
            let top = 1 % k as i64;
            top_images.push(top);
            commutes &= q(&pure_braid_generator(i, j)) == (2 * top).rem_euclid(modulus);
        }
    }
    let top_surjective = top_images.iter().fold(k as i64, |g, &x| g.gcd(&x)) == 1;
    Ok(SquareReport {
        n,
        k,
        quotient_defined,
        twist_killed,
        commutes,
        top_surjective,
        two_nonzero: 2 % modulus != 0,
    })
}

/// The braid group abelianizes to Z, and the sign map onto the
/// abelianized symmetric group is onto Z/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub p: u64,
    pub braid: AbelianGroup,
    pub symmetric: AbelianGroup,
    pub surjective: bool,
}

pub fn braid_sign(p: u64) -> Result<SignReport, HomologyError> {
    let braid = preset(Preset::Braid, p)?;
    let sym = preset(Preset::Symmetric, p)?;
    let bab = braid.abelianization();
    let sab = sym.abelianization();
    let gens = braid.generators();
    let unit = |i: usize| {
        let mut v = vec![0i64; gens];
        v[i] = 1;
        v
    };
    // σ₁ generates the abelianized braid group and every σᵢ is equal to it
    let s1 = bab.image(&unit(0));
    let cyclic_on_sigma1 = bab.group == AbelianGroup::free(1)
        && s1[0].abs().is_one()
        && (0..gens).all(|i| bab.image(&unit(i)) == s1);
    let two = BigUint::from(2u32);
    let sign_onto = sab.group.torsion == [two] && sab.image(&unit(0))[0].is_one();
    Ok(SignReport {
        p,
        braid: bab.group,
        symmetric: sab.group,
        surjective: cyclic_on_sigma1 && sign_onto,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HKind {
    H1MapTorus,
    H2MapClosed,
}

impl fmt::Display for HKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HKind::H1MapTorus => "H1(Map(torus))",
            HKind::H2MapClosed => "H2(Map(closed surface))",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitedGroup {
    pub group: AbelianGroup,
    pub citation: &'static str,
}

/// Tabulated low-degree homology of closed-surface mapping class groups.
/// Only the torus entry is recomputed here (see [`Preset::Sl2z`]).
pub fn h_lookup(kind: HKind, g: u64) -> Result<CitedGroup, HomologyError> {
    let (group, citation) = match (kind, g) {
        (HKind::H1MapTorus, 1) => (
            AbelianGroup::cyclic(12),
            "Map(torus) = SL2(Z), abelianization Z/12",
        ),
        (HKind::H2MapClosed, 2) => (
            AbelianGroup::cyclic(2),
            "Korkmaz, low-dimensional homology of mapping class groups",
        ),
        (HKind::H2MapClosed, 3) => (
            AbelianGroup::with_torsion(1, &[2]),
            "Sakasai, genus three",
        ),
        (HKind::H2MapClosed, g) if g >= 4 => (
            AbelianGroup::free(1),
            "Harer; Korkmaz, stable second homology",
        ),
        (kind, g) => return Err(HomologyError::OutOfTable { kind, g }),
    };
    Ok(CitedGroup { group, citation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// (1 − t²)^(−p)
    TorusPower,
    /// ∏_{i=1..p} (1 − t^{2i})^(−1)
    WreathQuotient,
}

impl FromStr for SeriesKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "torus" | "torus_power" => Ok(SeriesKind::TorusPower),
            "wreath" | "wreath_quotient" => Ok(SeriesKind::WreathQuotient),
            other => Err(format!("unknown series `{other}` (expected torus or wreath)")),
        }
    }
}

/// Coefficients of t⁰ … t^max_degree.
pub fn poincare_series(
    kind: SeriesKind,
    p: u64,
    max_degree: u64,
) -> Result<Vec<BigUint>, HomologyError> {
    if max_degree % 2 == 1 {
        return Err(HomologyError::OddDegree(max_degree));
    }
    if p == 0 {
        return Err(HomologyError::BadParameter {
            n: p,
            min: 1,
            max: u64::MAX,
        });
    }
    let half = (max_degree / 2) as usize;
    let even: Vec<BigUint> = match kind {
        SeriesKind::TorusPower => (0..=half as u64).map(|d| binomial(d + p - 1, p - 1)).collect(),
        SeriesKind::WreathQuotient => {
            let mut ways = vec![BigUint::zero(); half + 1];
            ways[0] = BigUint::one();
            for part in 1..=(p as usize).min(half) {
                for d in part..=half {
                    let add = ways[d - part].clone();
                    ways[d] += add;
                }
            }
            ways
        }
    };
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    for c in even {
        out.push(c);
        out.push(BigUint::zero());
    }
    out.pop();
    Ok(out)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
