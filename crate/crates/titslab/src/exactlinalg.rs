//! Exact linear algebra over the rationals and over prime fields.
//!
//! Everything here is deterministic and exact: scalars are
//! arbitrary-precision rationals or residues modulo a prime, subspaces are
//! kept in canonical reduced row echelon form, and equality of subspaces is
//! literal equality of canonical forms.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The field of the given characteristic; 0 means the rationals.
    pub fn of_characteristic(p: u64) -> Result<Field> {
        match p {
            0 => Ok(Field::Rational),
            _ if is_prime(p) => Ok(Field::Prime(p)),
            _ => Err(Error::Invalid(format!("{p} is not prime"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar: a reduced rational or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Mod(1 % p, p),
        }
    }

    pub fn from_i64(value: i64, field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(value))),
            Field::Prime(p) => {
                let r = value.rem_euclid(p as i64) as u64;
                Scalar::Mod(r, p)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + b) % p, *p),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => Scalar::Mod((a + p - b) % p, *p),
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, _)) => {
                let prod = (*a as u128 * *b as u128) % *p as u128;
                Scalar::Mod(prod as u64, *p)
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod(if *a == 0 { 0 } else { p - a }, *p),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod(a, p) => Scalar::Mod(mod_pow(*a, *p - 2, *p), *p),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Decimal numerator/denominator strings; residues report denominator 1.
    pub fn to_fraction_strings(&self) -> (String, String) {
        match self {
            Scalar::Rat(r) => (r.numer().to_string(), r.denom().to_string()),
            Scalar::Mod(v, _) => (v.to_string(), "1".to_string()),
        }
    }

    /// Parses decimal numerator/denominator strings into the given field.
    pub fn from_fraction_strings(num: &str, den: &str, field: Field) -> Result<Scalar> {
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        match field {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(n, d))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let nr = ((n % &pb) + &pb) % &pb;
                let dr = ((d % &pb) + &pb) % &pb;
                let nv: u64 = nr.try_into().expect("reduced residue fits");
                let dv: u64 = dr.try_into().expect("reduced residue fits");
                Scalar::Mod(nv, p).div(&Scalar::Mod(dv, p))
            }
        }
    }

    /// The rational value as an exact integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.denom().is_one() => Some(r.numer().clone()),
            Scalar::Mod(v, _) => Some(BigInt::from(*v)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

/// Nicely signed display helper for term lists.
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Mod(..) => false,
    }
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = base as u128 % p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// A sparse vector: sorted `(column, coefficient)` pairs, no zeros stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
        entries.retain(|(_, c)| !c.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        for w in entries.windows(2) {
            assert!(w[0].0 < w[1].0, "duplicate column index");
        }
        SparseVec { entries }
    }

    pub fn empty() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(col: usize, field: Field) -> SparseVec {
        SparseVec {
            entries: vec![(col, Scalar::one(field))],
        }
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |(i, _)| *i)
            .ok()
            .map(|idx| &self.entries[idx].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::empty();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.mul(c)))
                .collect(),
        }
    }

    /// `self + c * other`, merged exactly.
    pub fn add_scaled(&self, other: &SparseVec, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let pick = match (self.entries.get(i), other.entries.get(j)) {
                (Some((a, _)), Some((b, _))) => a.cmp(b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match pick {
                Ordering::Less => {
                    out.push(self.entries[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (col, v) = &other.entries[j];
                    out.push((*col, v.mul(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let (col, a) = &self.entries[i];
                    let (_, b) = &other.entries[j];
                    let sum = a.add(&b.mul(c));
                    if !sum.is_zero() {
                        out.push((*col, sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseVec { entries: out }
    }

    /// Shifts all column indices by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i + offset, v.clone()))
                .collect(),
        }
    }

    /// The entries with columns in `[lo, hi)`, re-based at zero.
    pub fn slice(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }
}

/// Identifies the basis a subspace lives in, so that subspaces over
/// different enumerations cannot be mixed accidentally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub name: String,
    pub dim: usize,
    pub field: Field,
}

impl Ambient {
    pub fn new(name: impl Into<String>, dim: usize, field: Field) -> Ambient {
        Ambient {
            name: name.into(),
            dim,
            field,
        }
    }
}

/// A rectangular exact matrix given by sparse rows.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub ncols: usize,
    pub field: Field,
    pub rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn new(ncols: usize, field: Field, rows: Vec<SparseVec>) -> Matrix {
        for r in &rows {
            if let Some((last, _)) = r.entries().last() {
                assert!(*last < ncols, "entry outside matrix");
            }
        }
        Matrix { ncols, field, rows }
    }
}

/// A subspace in canonical reduced row echelon form: rows nonzero, pivots
/// strictly increasing with unit pivot entries, pivot columns otherwise
/// zero. Equal subspaces have identical canonical forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: Ambient,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form; returns the rank together with the canonical
/// row space.
pub fn rref(matrix: &Matrix, ambient: &Ambient) -> (usize, Subspace) {
    assert_eq!(matrix.ncols, ambient.dim, "ambient dimension mismatch");
    assert_eq!(matrix.field, ambient.field, "ambient field mismatch");
    let mut space = Subspace {
        ambient: ambient.clone(),
        rows: Vec::new(),
        pivots: Vec::new(),
    };
    for row in &matrix.rows {
        space.insert_row(row);
    }
    (space.dim(), space)
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(ambient: Ambient) -> Subspace {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Builds the span of the given rows.
    pub fn span(ambient: &Ambient, rows: &[SparseVec]) -> Subspace {
        let mut space = Subspace::zero(ambient.clone());
        for row in rows {
            space.insert_row(row);
        }
        space
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` against the basis; the remainder is zero exactly when
    /// the vector lies in the subspace.
    pub fn reduce(&self, row: &SparseVec) -> SparseVec {
        let mut current = row.clone();
        // Pivot columns are increasing, so one pass suffices.
        for (k, &pivot) in self.pivots.iter().enumerate() {
            if let Some(c) = current.get(pivot) {
                let c = c.clone();
                current = current.add_scaled(&self.rows[k], &c.neg());
            }
        }
        current
    }

    /// Inserts a row into the basis, keeping canonical form. Returns true
    /// when the row enlarged the subspace.
    pub fn insert_row(&mut self, row: &SparseVec) -> bool {
        let reduced = self.reduce(row);
        let lead = match reduced.leading() {
            Some(l) => l,
            None => return false,
        };
        let lead_coeff = reduced.get(lead).unwrap().clone();
        let normalized = reduced.scale(&lead_coeff.inv().expect("leading entry is nonzero"));
        // Clear the new pivot column from existing rows.
        for k in 0..self.rows.len() {
            if let Some(c) = self.rows[k].get(lead) {
                let c = c.clone();
                self.rows[k] = self.rows[k].add_scaled(&normalized, &c.neg());
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, normalized);
        true
    }

    pub fn contains_vector(&self, row: &SparseVec) -> bool {
        self.reduce(row).is_zero()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ambient.name, other.ambient.name
            )));
        }
        Ok(())
    }

    /// Canonical-form equality.
    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.rows == other.rows)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|r| self.contains_vector(r)))
    }

    /// The sum of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for row in &other.rows {
            out.insert_row(row);
        }
        Ok(out)
    }

    /// The intersection, by the Zassenhaus block construction: rows
    /// `[u | u]` for `u` in `self` and `[v | 0]` for `v` in `other`; rows of
    /// the echelon form with zero left half have right halves spanning the
    /// intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let m = self.ambient.dim;
        let wide = Ambient::new(
            format!("{}#zassenhaus", self.ambient.name),
            2 * m,
            self.ambient.field,
        );
        let mut rows = Vec::with_capacity(self.rows.len() + other.rows.len());
        for u in &self.rows {
            rows.push(u.add_scaled(&u.shifted(m), &Scalar::one(self.ambient.field)));
        }
        for v in &other.rows {
            rows.push(v.clone());
        }
        let (_, echelon) = rref(&Matrix::new(2 * m, self.ambient.field, rows), &wide);
        let mut inter = Subspace::zero(self.ambient.clone());
        for row in echelon.rows() {
            if row.leading().map_or(false, |l| l >= m) {
                inter.insert_row(&row.slice(m, 2 * m));
            }
        }
        Ok(inter)
    }
}

/// The left kernel of a matrix: all coefficient rows `a` with `a M = 0`,
/// returned as a subspace of the row-index space.
pub fn left_kernel(matrix: &Matrix) -> Subspace {
    let r = matrix.rows.len();
    let m = matrix.ncols;
    let field = matrix.field;
    let wide = Ambient::new("kernel#augmented", m + r, field);
    let rows: Vec<SparseVec> = matrix
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| row.add_scaled(&SparseVec::unit(m + i, field), &Scalar::one(field)))
        .collect();
    let (_, echelon) = rref(&Matrix::new(m + r, field, rows), &wide);
    let coeff_ambient = Ambient::new("kernel#coefficients", r, field);
    let mut kernel = Subspace::zero(coeff_ambient);
    for row in echelon.rows() {
        if row.leading().map_or(false, |l| l >= m) {
            kernel.insert_row(&row.slice(m, m + r));
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn vec_of(field: Field, entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::new(
            entries
                .iter()
                .map(|&(i, v)| (i, Scalar::from_i64(v, field)))
                .collect(),
        )
    }

    #[test]
    fn scalar_arithmetic() {
        let a = rat(1, 2);
        let b = rat(1, 3);
        assert_eq!(a.add(&b), rat(5, 6));
        assert_eq!(a.mul(&b), rat(1, 6));
        assert_eq!(a.sub(&b), rat(1, 6));
        assert!(a.div(&b).unwrap() == rat(3, 2));
        let p = Field::Prime(7);
        let x = Scalar::from_i64(-3, p);
        assert_eq!(x, Scalar::Mod(4, 7));
        assert_eq!(x.inv().unwrap().mul(&x), Scalar::one(p));
        assert!(Scalar::zero(p).inv().is_err());
    }

    #[test]
    fn fraction_strings_round_trip() {
        let s = rat(-4, 6);
        let (n, d) = s.to_fraction_strings();
        assert_eq!((n.as_str(), d.as_str()), ("-2", "3"));
        let back = Scalar::from_fraction_strings("-2", "3", Field::Rational).unwrap();
        assert_eq!(back, s);
        let m = Scalar::from_fraction_strings("-2", "3", Field::Prime(5)).unwrap();
        // -2/3 = 3 * 3^{-1} = 3 * 2 = 6 = 1 mod 5
        assert_eq!(m, Scalar::Mod(1, 5));
    }

    #[test]
    fn rref_small_examples() {
        let f = Field::Rational;
        let amb = Ambient::new("test", 3, f);
        let id = Matrix::new(
            3,
            f,
            vec![
                vec_of(f, &[(0, 1)]),
                vec_of(f, &[(1, 1)]),
                vec_of(f, &[(2, 1)]),
            ],
        );
        let (rank, _) = rref(&id, &amb);
        assert_eq!(rank, 3);
        let zero = Matrix::new(3, f, vec![SparseVec::empty()]);
        assert_eq!(rref(&zero, &amb).0, 0);
        let amb2 = Ambient::new("test2", 2, f);
        let dep = Matrix::new(
            2,
            f,
            vec![vec_of(f, &[(0, 1), (1, 2)]), vec_of(f, &[(0, 2), (1, 4)])],
        );
        let (rank, basis) = rref(&dep, &amb2);
        assert_eq!(rank, 1);
        assert_eq!(basis.rows()[0], vec_of(f, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn rref_is_canonical_and_idempotent() {
        let f = Field::Rational;
        let amb = Ambient::new("test", 4, f);
        let m1 = Matrix::new(
            4,
            f,
            vec![
                vec_of(f, &[(0, 2), (1, 4), (3, 2)]),
                vec_of(f, &[(0, 1), (2, 1)]),
                vec_of(f, &[(1, 2), (2, -1), (3, 1)]),
            ],
        );
        let (_, s1) = rref(&m1, &amb);
        // Same span presented differently.
        let m2 = Matrix::new(
            4,
            f,
            vec![
                vec_of(f, &[(0, 3), (1, 4), (2, 1), (3, 2)]),
                vec_of(f, &[(1, 2), (2, -1), (3, 1)]),
                vec_of(f, &[(0, 1), (2, 1)]),
                vec_of(f, &[(0, 4), (1, 8), (3, 4)]),
            ],
        );
        let (_, s2) = rref(&m2, &amb);
        assert!(s1.equal(&s2).unwrap());
        let again = Matrix::new(4, f, s1.rows().to_vec());
        let (_, s3) = rref(&again, &amb);
        assert!(s1.equal(&s3).unwrap());
    }

    #[test]
    fn subspace_queries() {
        let f = Field::Rational;
        let amb = Ambient::new("q", 2, f);
        let u = Subspace::span(&amb, &[vec_of(f, &[(0, 1)])]);
        let v = Subspace::span(&amb, &[vec_of(f, &[(1, 1)])]);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
        assert!(u.equal(&u).unwrap());
        let w = Subspace::span(&amb, &[vec_of(f, &[(0, 1)]), vec_of(f, &[(1, 1)])]);
        let diag = Subspace::span(&amb, &[vec_of(f, &[(0, 1), (1, 1)])]);
        let inter = w.intersect(&diag).unwrap();
        assert!(inter.equal(&diag).unwrap());
        assert!(w.contains_vector(&vec_of(f, &[(0, 5), (1, -3)])));
        assert!(!u.contains_vector(&vec_of(f, &[(1, 1)])));
        let mismatch = Subspace::zero(Ambient::new("other", 2, f));
        assert!(u.equal(&mismatch).is_err());
    }

    #[test]
    fn dimension_formula_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rational, Field::Prime(5)] {
            let amb = Ambient::new("dim", 6, field);
            for _ in 0..40 {
                let mk = |rng: &mut ChaCha8Rng| {
                    let nrows = rng.gen_range(0..4);
                    let mut rows = Vec::new();
                    for _ in 0..nrows {
                        let mut entries = Vec::new();
                        for i in 0..6 {
                            if rng.gen_bool(0.6) {
                                entries.push((i, Scalar::from_i64(rng.gen_range(-3..=3), field)));
                            }
                        }
                        rows.push(SparseVec::new(entries));
                    }
                    Subspace::span(&amb, &rows)
                };
                let u = mk(&mut rng);
                let v = mk(&mut rng);
                let sum = u.sum(&v).unwrap();
                let inter = u.intersect(&v).unwrap();
                assert_eq!(u.dim() + v.dim(), sum.dim() + inter.dim());
                assert!(sum.contains_subspace(&u).unwrap());
                assert!(u.contains_subspace(&inter).unwrap());
            }
        }
    }

    #[test]
    fn prime_field_agrees_with_rationals_when_no_denominator() {
        // Integer matrices with unimodular elimination mod 7 match the
        // rational computation reduced mod 7.
        let fq = Field::Rational;
        let fp = Field::Prime(7);
        let rows_q = vec![
            vec_of(fq, &[(0, 1), (1, 2), (2, 3)]),
            vec_of(fq, &[(0, 1), (1, 1)]),
        ];
        let rows_p = vec![
            vec_of(fp, &[(0, 1), (1, 2), (2, 3)]),
            vec_of(fp, &[(0, 1), (1, 1)]),
        ];
        let (rk_q, sq) = rref(&Matrix::new(3, fq, rows_q), &Ambient::new("a", 3, fq));
        let (rk_p, sp) = rref(&Matrix::new(3, fp, rows_p), &Ambient::new("a", 3, fp));
        assert_eq!(rk_q, rk_p);
        for (rq, rp) in sq.rows().iter().zip(sp.rows()) {
            for ((iq, cq), (ip, cp)) in rq.entries().iter().zip(rp.entries()) {
                assert_eq!(iq, ip);
                let (n, d) = cq.to_fraction_strings();
                let nq: i64 = n.parse().unwrap();
                let dq: i64 = d.parse().unwrap();
                let expected = Scalar::from_i64(nq, fp)
                    .div(&Scalar::from_i64(dq, fp))
                    .unwrap();
                assert_eq!(&expected, cp);
            }
        }
    }

    #[test]
    fn left_kernel_finds_relations() {
        let f = Field::Rational;
        // Row 2 = row 0 + row 1.
        let m = Matrix::new(
            3,
            f,
            vec![
                vec_of(f, &[(0, 1), (1, 1)]),
                vec_of(f, &[(1, 1), (2, 1)]),
                vec_of(f, &[(0, 1), (1, 2), (2, 1)]),
            ],
        );
        let k = left_kernel(&m);
        assert_eq!(k.dim(), 1);
        let rel = &k.rows()[0];
        // The relation row combines the matrix rows to zero.
        let mut acc = SparseVec::empty();
        for (i, c) in rel.entries() {
            acc = acc.add_scaled(&m.rows[*i], c);
        }
        assert!(acc.is_zero());
    }
}
