//! Linear combinations of set compositions and the three structures that
//! live on them: the intersection product, the concatenation product and
//! the coproduct, together with the Lie bracket, the right-normed Dynkin
//! mapping, the linearised support map and the symmetric-group action.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlinalg::{Field, Scalar};
use crate::setcomp::{SetComposition, SetPartition};

/// A finite linear combination of set compositions with exact scalar
/// coefficients and a fixed coefficient field. Terms with different
/// supports may coexist; the algebra is graded by support set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    field: Field,
    terms: BTreeMap<SetComposition, Scalar>,
}

impl Element {
    pub fn zero(field: Field) -> Element {
        Element {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// The single composition `sc` with coefficient one.
    pub fn monomial(sc: SetComposition, field: Field) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(sc, Scalar::one(field));
        Element { field, terms }
    }

    pub fn from_terms(terms: Vec<(SetComposition, Scalar)>, field: Field) -> Element {
        let mut out = Element::zero(field);
        for (sc, c) in terms {
            out.add_term(sc, c);
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetComposition, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, sc: &SetComposition) -> Scalar {
        self.terms
            .get(sc)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    fn add_term(&mut self, sc: SetComposition, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&sc) {
            None => {
                self.terms.insert(sc, c);
            }
            Some(existing) => {
                let sum = existing.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(sc, sum);
                }
            }
        }
    }

    fn check_field(&self, other: &Element) {
        assert_eq!(
            self.field, other.field,
            "elements over different characteristics"
        );
    }

    pub fn add(&self, other: &Element) -> Element {
        self.check_field(other);
        let mut out = self.clone();
        for (sc, c) in &other.terms {
            out.add_term(sc.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.check_field(other);
        let mut out = self.clone();
        for (sc, c) in &other.terms {
            out.add_term(sc.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(sc, c)| (sc.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return Element::zero(self.field);
        }
        Element {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(sc, v)| (sc.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Element {
        self.scale(&Scalar::from_i64(c, self.field))
    }

    /// The common support of all terms, if the element is homogeneous and
    /// nonzero.
    pub fn homogeneous_support(&self) -> Option<Vec<u32>> {
        let mut iter = self.terms.keys();
        let first = iter.next()?.support().to_vec();
        for sc in iter {
            if sc.support() != first.as_slice() {
                return None;
            }
        }
        Some(first)
    }

    /// The intersection product: the bilinear extension of the Tits
    /// product, with terms over different supports annihilating each other.
    pub fn wedge(&self, other: &Element) -> Element {
        self.check_field(other);
        let mut out = Element::zero(self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if p.support() != q.support() {
                    continue;
                }
                let prod = p.tits_product(q).expect("supports agree");
                out.add_term(prod, a.mul(b));
            }
        }
        out
    }

    /// The concatenation product: zero on overlapping supports; the empty
    /// composition is a two-sided identity.
    pub fn vee(&self, other: &Element) -> Element {
        self.check_field(other);
        let mut out = Element::zero(self.field);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Ok(cat) = p.concat(q) {
                    out.add_term(cat, a.mul(b));
                }
            }
        }
        out
    }

    /// The Lie bracket of the concatenation product.
    pub fn lie_bracket(&self, other: &Element) -> Element {
        self.vee(other).sub(&other.vee(self))
    }

    /// The coproduct: each composition splits over all two-set partitions
    /// of its support into restricted pieces.
    pub fn coproduct(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.field);
        for (p, c) in &self.terms {
            let support = p.support().to_vec();
            let n = support.len();
            for mask in 0u64..(1 << n) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                for (i, &x) in support.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                let l = p.restrict(&left).expect("subset of support");
                let r = p.restrict(&right).expect("subset of support");
                out.add_term(l, r, c.clone());
            }
        }
        out
    }

    /// True when the coproduct has only the two boundary terms.
    pub fn is_delta_primitive(&self) -> bool {
        let empty = SetComposition::empty();
        let mut expected = TensorElement::zero(self.field);
        for (sc, c) in &self.terms {
            expected.add_term(sc.clone(), empty.clone(), c.clone());
            expected.add_term(empty.clone(), sc.clone(), c.clone());
        }
        self.coproduct() == expected
    }

    /// The right-normed Dynkin mapping, extended linearly: a composition of
    /// length `k` maps to the iterated bracket of its blocks,
    /// right-normed; one-block compositions are fixed.
    pub fn dynkin(&self) -> Element {
        let mut out = Element::zero(self.field);
        for (sc, c) in &self.terms {
            out = out.add(&dynkin_of_composition(sc, self.field).scale(c));
        }
        out
    }

    /// The linear pushforward along the map forgetting block order. The
    /// element lies in the radical of its graded component exactly when
    /// this image is zero.
    pub fn support_image(&self) -> BTreeMap<SetPartition, Scalar> {
        let mut out: BTreeMap<SetPartition, Scalar> = BTreeMap::new();
        for (sc, c) in &self.terms {
            let key = sc.support_partition();
            match out.remove(&key) {
                None => {
                    out.insert(key, c.clone());
                }
                Some(existing) => {
                    let sum = existing.add(c);
                    if !sum.is_zero() {
                        out.insert(key, sum);
                    }
                }
            }
        }
        out
    }

    /// The right action of a permutation of `{1,…,n}`, applied to every
    /// element of every block. All term supports must lie inside `{1,…,n}`.
    pub fn act(&self, pi: &Permutation) -> Result<Element> {
        let n = pi.degree() as u32;
        let mut out = Element::zero(self.field);
        for (sc, c) in &self.terms {
            if sc.support().iter().any(|&x| x > n) {
                return Err(Error::Invalid(format!(
                    "support of {sc} not contained in 1..={n}"
                )));
            }
            let image = sc.relabel(|x| pi.apply(x))?;
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Applies an arbitrary injective relabelling of points.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<Element> {
        let mut out = Element::zero(self.field);
        for (sc, c) in &self.terms {
            let image = sc.relabel(|x| *map.get(&x).unwrap_or(&x))?;
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Serialises as `{"char":0,"terms":[{"sc":"1,3|2","num":"-1","den":"1"}]}`
    /// with numerators and denominators as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(sc, c)| {
                let (num, den) = c.to_fraction_strings();
                serde_json::json!({"sc": sc.to_string(), "num": num, "den": den})
            })
            .collect();
        serde_json::json!({"char": self.field.characteristic(), "terms": terms})
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Element> {
        let ch = value
            .get("char")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("missing char".into()))?;
        let field = Field::of_characteristic(ch)?;
        let terms = value
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        let mut out = Element::zero(field);
        for term in terms {
            let sc_text = term
                .get("sc")
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Parse("missing sc".into()))?;
            let num = term
                .get("num")
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Parse("missing num".into()))?;
            let den = term
                .get("den")
                .and_then(|v| v.as_str())
                .unwrap_or("1");
            let sc = SetComposition::parse(sc_text)?;
            let c = Scalar::from_fraction_strings(num, den, field)?;
            out.add_term(sc, c);
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sc, c) in &self.terms {
            let neg = crate::exactlinalg::is_negative(c);
            let mag = if neg { c.neg() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "({sc})")?;
        }
        Ok(())
    }
}

fn dynkin_of_composition(sc: &SetComposition, field: Field) -> Element {
    let k = sc.len();
    if k <= 1 {
        return Element::monomial(sc.clone(), field);
    }
    let head = Element::monomial(
        SetComposition::new(vec![sc.blocks()[0].clone()]).expect("block is valid"),
        field,
    );
    let tail = SetComposition::new(sc.blocks()[1..].to_vec()).expect("blocks are valid");
    let tail_image = dynkin_of_composition(&tail, field);
    head.lie_bracket(&tail_image)
}

/// A finite linear combination of pairs of set compositions; the value
/// space of the coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    field: Field,
    terms: BTreeMap<(SetComposition, SetComposition), Scalar>,
}

impl TensorElement {
    pub fn zero(field: Field) -> TensorElement {
        TensorElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, left: SetComposition, right: SetComposition, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(existing) => {
                let sum = existing.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SetComposition, SetComposition), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The tensor product of two elements.
    pub fn of(left: &Element, right: &Element) -> TensorElement {
        assert_eq!(left.field, right.field, "field mismatch");
        let mut out = TensorElement::zero(left.field);
        for (p, a) in &left.terms {
            for (q, b) in &right.terms {
                out.add_term(p.clone(), q.clone(), a.mul(b));
            }
        }
        out
    }

    /// Componentwise intersection product.
    pub fn wedge2(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = TensorElement::zero(self.field);
        for ((p1, p2), a) in &self.terms {
            for ((q1, q2), b) in &other.terms {
                if p1.support() != q1.support() || p2.support() != q2.support() {
                    continue;
                }
                let l = p1.tits_product(q1).expect("supports agree");
                let r = p2.tits_product(q2).expect("supports agree");
                out.add_term(l, r, a.mul(b));
            }
        }
        out
    }

    /// Componentwise concatenation product.
    pub fn vee2(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = TensorElement::zero(self.field);
        for ((p1, p2), a) in &self.terms {
            for ((q1, q2), b) in &other.terms {
                if let (Ok(l), Ok(r)) = (p1.concat(q1), p2.concat(q2)) {
                    out.add_term(l, r, a.mul(b));
                }
            }
        }
        out
    }

    /// Multiplies the two tensor slots together with the concatenation
    /// product.
    pub fn fold_vee(&self) -> Element {
        let mut out = Element::zero(self.field);
        for ((p, q), c) in &self.terms {
            if let Ok(cat) = p.concat(q) {
                out.add_term(cat, c.clone());
            }
        }
        out
    }

    /// Swaps the tensor slots.
    pub fn swapped(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.field);
        for ((p, q), c) in &self.terms {
            out.add_term(q.clone(), p.clone(), c.clone());
        }
        out
    }
}

/// A permutation of `{1,…,n}` in one-line notation: `images[i-1]` is the
/// image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x == 0 || x > n || seen[(x - 1) as usize] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[(x - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (1..=n as u32).collect(),
        }
    }

    /// The transposition swapping `a` and `b` inside `{1,…,n}`.
    pub fn transposition(n: usize, a: u32, b: u32) -> Permutation {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        images.swap((a - 1) as usize, (b - 1) as usize);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn one_line(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    /// Composition in application order: `self` first, then `other`. With
    /// the right action on compositions this gives
    /// `act(act(f, p), q) = act(f, p.then(q))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[(x - 1) as usize] = (i + 1) as u32;
        }
        Permutation { images }
    }

    /// Number of inversions of the one-line word.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `i` with `images[i-1] > images[i]`, 1-based.
    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.images.len())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    /// All permutations of `{1,…,n}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (1..=n as u32)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}
