//! The generic primitive idempotent attached to each finite support set,
//! the idempotent basis it generates under concatenation, triangular basis
//! changes between the composition basis and the idempotent basis, and the
//! fast multiplication rule for the idempotent basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::exactlinalg::{Field, Scalar};
use crate::setcomp::{enumerate, EnumFilter, SetComposition};

/// One idempotent basis element: its composition label together with its
/// expansion in the composition basis.
#[derive(Clone, Debug)]
pub struct EBasisElement {
    pub label: SetComposition,
    pub expansion: Element,
}

/// Expansions have integer coefficients `+1`/`-1`, so they are cached once
/// in integer form and materialised per field on demand.
static EXPANSION_CACHE: LazyLock<RwLock<HashMap<SetComposition, Arc<Vec<(SetComposition, i8)>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The alternating sum over all compositions of `a` with the minimum in
/// the first block. This element is idempotent, primitive, and primitive
/// for the coproduct; the coefficient of the one-block composition is 1.
pub fn e_atom(a: &[u32], field: Field) -> Result<Element> {
    if a.is_empty() {
        return Err(Error::Invalid("atom requires a nonempty support".into()));
    }
    let label = SetComposition::full(a);
    let terms = atom_terms(&label)?;
    Ok(materialize(&terms, field))
}

fn atom_terms(label: &SetComposition) -> Result<Arc<Vec<(SetComposition, i8)>>> {
    if let Some(hit) = EXPANSION_CACHE.read().unwrap().get(label) {
        return Ok(hit.clone());
    }
    let star = enumerate(label.support(), EnumFilter::Star, usize::MAX)?;
    let terms: Vec<(SetComposition, i8)> = star
        .into_iter()
        .map(|p| {
            let sign: i8 = if (p.len() - 1) % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect();
    let arc = Arc::new(terms);
    EXPANSION_CACHE
        .write()
        .unwrap()
        .entry(label.clone())
        .or_insert_with(|| arc.clone());
    Ok(arc)
}

/// The integer expansion of the idempotent labelled by `q`: the
/// concatenation product of the atoms of its blocks. Cached per label.
pub fn e_expansion_terms(q: &SetComposition) -> Arc<Vec<(SetComposition, i8)>> {
    if let Some(hit) = EXPANSION_CACHE.read().unwrap().get(q) {
        return hit.clone();
    }
    let mut acc: Vec<(SetComposition, i8)> = vec![(SetComposition::empty(), 1)];
    for block in q.blocks() {
        let atom_label = SetComposition::new(vec![block.clone()]).expect("block is valid");
        let atom = atom_terms(&atom_label).expect("block is nonempty");
        let mut next = Vec::with_capacity(acc.len() * atom.len());
        for (prefix, s) in &acc {
            for (p, t) in atom.iter() {
                let cat = prefix.concat(p).expect("blocks are disjoint");
                next.push((cat, s * t));
            }
        }
        acc = next;
    }
    // The expansion is unitriangular: the label itself plus strictly finer
    // rearrangement-inequivalent refinements.
    for (r, _) in &acc {
        assert!(r == q || r.len() > q.len(), "triangularity violated");
        debug_assert!(r.refines(q).unwrap());
    }
    let arc = Arc::new(acc);
    EXPANSION_CACHE
        .write()
        .unwrap()
        .entry(q.clone())
        .or_insert_with(|| arc.clone());
    arc
}

fn materialize(terms: &[(SetComposition, i8)], field: Field) -> Element {
    Element::from_terms(
        terms
            .iter()
            .map(|(sc, s)| (sc.clone(), Scalar::from_i64(*s as i64, field)))
            .collect(),
        field,
    )
}

/// The idempotent basis element labelled by `q`, with its expansion in the
/// composition basis.
pub fn e_family(q: &SetComposition, field: Field) -> EBasisElement {
    let terms = e_expansion_terms(q);
    EBasisElement {
        label: q.clone(),
        expansion: materialize(&terms, field),
    }
}

/// A formal linear combination of idempotent basis labels. Kept distinct
/// from [`Element`] so that the two coordinate systems cannot be confused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECombination {
    field: Field,
    coeffs: BTreeMap<SetComposition, Scalar>,
}

impl ECombination {
    pub fn zero(field: Field) -> ECombination {
        ECombination {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(label: SetComposition, field: Field) -> ECombination {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(label, Scalar::one(field));
        ECombination { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&SetComposition, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, label: &SetComposition) -> Scalar {
        self.coeffs
            .get(label)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_coeff(&mut self, label: SetComposition, c: Scalar) {
        assert_eq!(c.field(), self.field, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&label) {
            None => {
                self.coeffs.insert(label, c);
            }
            Some(existing) => {
                let sum = existing.add(&c);
                if !sum.is_zero() {
                    self.coeffs.insert(label, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &ECombination) -> ECombination {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_coeff(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ECombination) -> ECombination {
        assert_eq!(self.field, other.field, "field mismatch");
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_coeff(l.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ECombination {
        if c.is_zero() {
            return ECombination::zero(self.field);
        }
        ECombination {
            field: self.field,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, v)| (l.clone(), v.mul(c)))
                .collect(),
        }
    }
}

impl fmt::Display for ECombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, c) in &self.coeffs {
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
            write!(f, "e[{label}]")?;
        }
        Ok(())
    }
}

/// Expands a formal idempotent combination into the composition basis.
pub fn e_to_pi(comb: &ECombination) -> Element {
    let mut out = Element::zero(comb.field);
    for (label, c) in &comb.coeffs {
        out = out.add(&e_family(label, comb.field).expansion.scale(c));
    }
    out
}

/// Inverts the triangular basis change: writes a homogeneous element as a
/// formal combination of idempotent basis labels. The zero element yields
/// the zero combination; a nonzero inhomogeneous element is rejected.
pub fn pi_to_e(f: &Element) -> Result<ECombination> {
    let mut out = ECombination::zero(f.field());
    if f.is_zero() {
        return Ok(out);
    }
    if f.homogeneous_support().is_none() {
        return Err(Error::Invalid(
            "basis change requires a homogeneous element".into(),
        ));
    }
    // The expansion of each basis element is its label plus strictly
    // longer compositions, so eliminating the minimal remaining term in
    // the length-graded order makes progress.
    let mut rest = f.clone();
    loop {
        let first = match rest.terms().next() {
            Some((l, c)) => (l.clone(), c.clone()),
            None => break,
        };
        let (label, coeff) = first;
        out.add_coeff(label.clone(), coeff.clone());
        let expansion = e_family(&label, f.field()).expansion;
        rest = rest.sub(&expansion.scale(&coeff));
    }
    Ok(out)
}

/// The product of two idempotent basis elements, computed by the
/// combinatorial rule: zero unless the right label refines the left label
/// with the minimum of each coarse block in the last fine block of its
/// piece; otherwise the concatenation of the Dynkin images of the pieces,
/// read off as idempotent labels.
pub fn e_multiply(p: &SetComposition, q: &SetComposition, field: Field) -> Result<ECombination> {
    if p.support() != q.support() {
        return Err(Error::SupportMismatch(format!("{p} vs {q}")));
    }
    let index = match q.dagger_refinement(p)? {
        Some(i) => i,
        None => return Ok(ECombination::zero(field)),
    };
    let mut acc: Vec<(SetComposition, Scalar)> =
        vec![(SetComposition::empty(), Scalar::one(field))];
    for group in index.as_composition().blocks() {
        let piece = q.select_blocks(group);
        let image = Element::monomial(piece, field).dynkin();
        let mut next = Vec::with_capacity(acc.len() * image.num_terms());
        for (prefix, c) in &acc {
            for (r, d) in image.terms() {
                let cat = prefix.concat(r).expect("pieces are disjoint");
                next.push((cat, c.mul(d)));
            }
        }
        acc = next;
    }
    let mut out = ECombination::zero(field);
    for (label, c) in acc {
        out.add_coeff(label, c);
    }
    Ok(out)
}

/// The same product computed the slow way, by expanding both factors into
/// the composition basis, multiplying there and converting back. Serves as
/// the independent oracle for [`e_multiply`].
pub fn e_multiply_naive(
    p: &SetComposition,
    q: &SetComposition,
    field: Field,
) -> Result<ECombination> {
    if p.support() != q.support() {
        return Err(Error::SupportMismatch(format!("{p} vs {q}")));
    }
    let fp = e_family(p, field).expansion;
    let fq = e_family(q, field).expansion;
    let product = fp.wedge(&fq);
    if product.is_zero() {
        return Ok(ECombination::zero(field));
    }
    pi_to_e(&product)
}

/// What [`primitivity_report`] reports about a homogeneous element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub is_idempotent: bool,
    pub is_delta_primitive: bool,
    pub full_block_coeff: Scalar,
}

/// Checks idempotency and coproduct primitivity of a nonzero homogeneous
/// element and reports the coefficient of the one-block composition.
pub fn primitivity_report(f: &Element) -> Result<PrimitivityReport> {
    let support = f
        .homogeneous_support()
        .filter(|_| !f.is_zero())
        .ok_or_else(|| Error::Invalid("report requires a nonzero homogeneous element".into()))?;
    let square = f.wedge(f);
    let full = SetComposition::full(&support);
    Ok(PrimitivityReport {
        is_idempotent: square == *f,
        is_delta_primitive: f.is_delta_primitive(),
        full_block_coeff: f.coeff(&full),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn sc(text: &str) -> SetComposition {
        SetComposition::parse(text).unwrap()
    }

    fn elem(parts: &[(i64, &str)]) -> Element {
        Element::from_terms(
            parts
                .iter()
                .map(|&(c, t)| (sc(t), Scalar::from_i64(c, Q)))
                .collect(),
            Q,
        )
    }

    #[test]
    fn atoms_for_small_supports() {
        assert_eq!(e_atom(&[1], Q).unwrap(), elem(&[(1, "1")]));
        assert_eq!(
            e_atom(&[1, 2], Q).unwrap(),
            elem(&[(1, "1,2"), (-1, "1|2")])
        );
        assert_eq!(
            e_atom(&[1, 2, 3], Q).unwrap(),
            elem(&[
                (1, "1,2,3"),
                (-1, "1,2|3"),
                (-1, "1|2,3"),
                (-1, "1,3|2"),
                (1, "1|2|3"),
                (1, "1|3|2"),
            ])
        );
        assert_eq!(
            e_atom(&[2, 5, 6], Q).unwrap(),
            elem(&[
                (1, "2,5,6"),
                (-1, "2,5|6"),
                (-1, "2|5,6"),
                (-1, "2,6|5"),
                (1, "2|5|6"),
                (1, "2|6|5"),
            ])
        );
        assert!(e_atom(&[], Q).is_err());
    }

    #[test]
    fn family_small_expansions() {
        assert_eq!(
            e_family(&sc("1,2|3"), Q).expansion,
            elem(&[(1, "1,2|3"), (-1, "1|2|3")])
        );
        assert_eq!(e_family(&sc("1|2|3"), Q).expansion, elem(&[(1, "1|2|3")]));
        assert_eq!(
            e_family(&sc("1,2,3"), Q).expansion,
            e_atom(&[1, 2, 3], Q).unwrap()
        );
        assert_eq!(
            e_family(&SetComposition::empty(), Q).expansion,
            Element::monomial(SetComposition::empty(), Q)
        );
    }

    #[test]
    fn family_elements_are_idempotent() {
        for n in 1..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            for q in enumerate(&a, EnumFilter::All, 9).unwrap() {
                let e = e_family(&q, Q).expansion;
                assert_eq!(e.wedge(&e), e, "q = {q}");
            }
        }
    }

    #[test]
    fn change_basis_examples() {
        let comb = pi_to_e(&elem(&[(1, "1,2|3")])).unwrap();
        let mut expected = ECombination::single(sc("1,2|3"), Q);
        expected.add_coeff(sc("1|2|3"), Scalar::one(Q));
        assert_eq!(comb, expected);

        let single = pi_to_e(&elem(&[(1, "1|2|3")])).unwrap();
        assert_eq!(single, ECombination::single(sc("1|2|3"), Q));

        // Round trips both ways.
        for n in 1..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            for q in enumerate(&a, EnumFilter::All, 9).unwrap() {
                let e = e_family(&q, Q).expansion;
                assert_eq!(pi_to_e(&e).unwrap(), ECombination::single(q.clone(), Q));
                let back = e_to_pi(&pi_to_e(&Element::monomial(q.clone(), Q)).unwrap());
                assert_eq!(back, Element::monomial(q, Q));
            }
        }

        let mixed = elem(&[(1, "1,2")]).add(&elem(&[(1, "3")]));
        assert!(pi_to_e(&mixed).is_err());
        assert!(pi_to_e(&Element::zero(Q)).unwrap().is_zero());
    }

    #[test]
    fn multiply_worked_examples() {
        let r = e_multiply(&sc("2,3,4|1"), &sc("3,4|1|2"), Q).unwrap();
        let mut expected = ECombination::single(sc("3,4|2|1"), Q);
        expected.add_coeff(sc("2|3,4|1"), Scalar::from_i64(-1, Q));
        assert_eq!(r, expected);

        let zero = e_multiply(&sc("1,2,3|4,5"), &sc("4|5|1,3|2"), Q).unwrap();
        assert!(zero.is_zero());

        for q in enumerate(&[1, 2, 3], EnumFilter::All, 9).unwrap() {
            let r = e_multiply(&q, &q, Q).unwrap();
            assert_eq!(r, ECombination::single(q, Q));
        }
    }

    #[test]
    fn multiply_matches_naive_oracle_small() {
        for n in 1..=3usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            for p in &all {
                for q in &all {
                    for field in [Q, Field::Prime(2)] {
                        let fast = e_multiply(p, q, field).unwrap();
                        let naive = e_multiply_naive(p, q, field).unwrap();
                        assert_eq!(fast, naive, "p={p} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_triangle_relations_small() {
        // Left multiplication by a composition; absorption within a
        // rearrangement class; vanishing without refinement.
        for n in 1..=3usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            for p in &all {
                for q in &all {
                    let ep = e_family(p, Q).expansion;
                    let eq = e_family(q, Q).expansion;
                    let prod = Element::monomial(p.clone(), Q).wedge(&eq);
                    if q.refines(p).unwrap() {
                        let expected = e_family(&p.tits_product(q).unwrap(), Q).expansion;
                        assert_eq!(prod, expected);
                    } else {
                        assert!(prod.is_zero());
                    }
                    if p.is_rearrangement_of(q) {
                        assert_eq!(ep.wedge(&eq), ep);
                    }
                    if !q.refines(p).unwrap() {
                        assert!(ep.wedge(&eq).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonal_system_small() {
        for n in 1..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let canon = enumerate(&a, EnumFilter::Canonical, 9).unwrap();
            let mut total = Element::zero(Q);
            for t in &canon {
                total = total.add(&e_family(t, Q).expansion);
                for s in &canon {
                    let prod = e_multiply(s, t, Q).unwrap();
                    if s == t {
                        assert_eq!(prod, ECombination::single(t.clone(), Q));
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
            assert_eq!(total, Element::monomial(SetComposition::full(&a), Q));
        }
    }

    #[test]
    fn primitivity_reports() {
        let e3 = e_atom(&[1, 2, 3], Q).unwrap();
        let r = primitivity_report(&e3).unwrap();
        assert!(r.is_idempotent && r.is_delta_primitive);
        assert!(r.full_block_coeff.is_one());

        let r2 = primitivity_report(&elem(&[(1, "1,2|3")])).unwrap();
        assert!(r2.is_idempotent);
        assert!(!r2.is_delta_primitive);
        assert!(r2.full_block_coeff.is_zero());

        let doubled = e_atom(&[1, 2], Q).unwrap().scale_i64(2);
        let r3 = primitivity_report(&doubled).unwrap();
        assert!(!r3.is_idempotent);
        assert!(r3.is_delta_primitive);
        assert_eq!(r3.full_block_coeff, Scalar::from_i64(2, Q));

        assert!(primitivity_report(&Element::zero(Q)).is_err());
    }

    #[test]
    fn delta_primitive_elements_are_annihilated_by_longer_compositions() {
        // A coproduct-primitive element is killed by every composition
        // other than the one-block one, and squares to its leading
        // coefficient times itself.
        for n in 2..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let e = e_atom(&a, Q).unwrap();
            for p in enumerate(&a, EnumFilter::All, 9).unwrap() {
                if p.len() > 1 {
                    assert!(Element::monomial(p, Q).wedge(&e).is_zero());
                }
            }
            let doubled = e.scale_i64(2);
            assert_eq!(doubled.wedge(&doubled), doubled.scale_i64(2));
        }
    }
}
