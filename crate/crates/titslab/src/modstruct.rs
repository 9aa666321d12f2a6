//! Module structure of the graded components: principal indecomposable
//! modules, the Jacobson radical, the descending Loewy series, the Cartan
//! matrix with both a closed form and a rank oracle, the Ext-quiver, and a
//! PBW-style basis adapted to the radical filtration.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::exactlinalg::{Ambient, Field, SparseVec, Subspace};
use crate::idempotents::{e_family, e_multiply, e_to_pi, ECombination};
use crate::setcomp::{
    enumerate, ordered_bell, partition_covers, star_count, EnumFilter, SetComposition,
    SetPartition,
};

/// A fixed enumeration of the compositions of one support set, shared by
/// the composition-basis and idempotent-basis coordinate systems.
#[derive(Debug)]
pub struct Enumeration {
    pub support: Vec<u32>,
    pub labels: Vec<SetComposition>,
    index: HashMap<SetComposition, usize>,
}

impl Enumeration {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, sc: &SetComposition) -> Option<usize> {
        self.index.get(sc).copied()
    }
}

static ENUM_CACHE: LazyLock<RwLock<HashMap<Vec<u32>, Arc<Enumeration>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// The cached enumeration of all compositions of `a` in canonical order.
pub fn enumeration(a: &[u32], cap: usize) -> Result<Arc<Enumeration>> {
    let mut key = a.to_vec();
    key.sort_unstable();
    key.dedup();
    if let Some(hit) = ENUM_CACHE.read().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let labels = enumerate(&key, EnumFilter::All, cap)?;
    let index = labels
        .iter()
        .enumerate()
        .map(|(i, sc)| (sc.clone(), i))
        .collect();
    let entry = Arc::new(Enumeration {
        support: key.clone(),
        labels,
        index,
    });
    ENUM_CACHE
        .write()
        .unwrap()
        .entry(key)
        .or_insert_with(|| entry.clone());
    Ok(entry)
}

fn support_name(a: &[u32]) -> String {
    a.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Ambient for coordinates in the composition basis.
pub fn pi_ambient(enumeration: &Enumeration, field: Field) -> Ambient {
    Ambient::new(
        format!("pi:{}", support_name(&enumeration.support)),
        enumeration.dim(),
        field,
    )
}

/// Ambient for coordinates in the idempotent basis.
pub fn e_ambient(enumeration: &Enumeration, field: Field) -> Ambient {
    Ambient::new(
        format!("e:{}", support_name(&enumeration.support)),
        enumeration.dim(),
        field,
    )
}

/// Coordinates of a homogeneous element in the composition basis.
pub fn element_row(f: &Element, enumeration: &Enumeration) -> Result<SparseVec> {
    let mut entries = Vec::with_capacity(f.num_terms());
    for (sc, c) in f.terms() {
        let col = enumeration.index_of(sc).ok_or_else(|| {
            Error::AmbientMismatch(format!("{sc} is not a composition of the ambient support"))
        })?;
        entries.push((col, c.clone()));
    }
    Ok(SparseVec::new(entries))
}

/// Coordinates of a formal idempotent combination in the idempotent basis.
pub fn ecomb_row(c: &ECombination, enumeration: &Enumeration) -> Result<SparseVec> {
    let mut entries = Vec::with_capacity(c.num_terms());
    for (label, v) in c.coeffs() {
        let col = enumeration.index_of(label).ok_or_else(|| {
            Error::AmbientMismatch(format!(
                "{label} is not a composition of the ambient support"
            ))
        })?;
        entries.push((col, v.clone()));
    }
    Ok(SparseVec::new(entries))
}

pub fn row_to_element(row: &SparseVec, enumeration: &Enumeration, field: Field) -> Element {
    Element::from_terms(
        row.entries()
            .iter()
            .map(|(i, c)| (enumeration.labels[*i].clone(), c.clone()))
            .collect(),
        field,
    )
}

pub fn row_to_ecomb(row: &SparseVec, enumeration: &Enumeration, field: Field) -> ECombination {
    let mut out = ECombination::zero(field);
    for (i, c) in row.entries() {
        out.add_coeff(enumeration.labels[*i].clone(), c.clone());
    }
    out
}

/// Re-expresses a subspace given in idempotent-basis coordinates in
/// composition-basis coordinates.
pub fn subspace_e_to_pi(
    space: &Subspace,
    enumeration: &Enumeration,
    field: Field,
) -> Result<Subspace> {
    let ambient = pi_ambient(enumeration, field);
    let mut rows = Vec::with_capacity(space.dim());
    for row in space.rows() {
        let comb = row_to_ecomb(row, enumeration, field);
        rows.push(element_row(&e_to_pi(&comb), enumeration)?);
    }
    Ok(Subspace::span(&ambient, &rows))
}

/// A principal indecomposable module: its canonical label, the idempotent
/// labels of its basis, and its dimension (the factorial of the length).
#[derive(Clone, Debug)]
pub struct PrincipalModule {
    pub label: SetComposition,
    pub basis: Vec<SetComposition>,
    pub dimension: usize,
}

/// The principal indecomposable module attached to a composition: its
/// basis consists of the idempotents labelled by the rearrangements of the
/// canonicalised label.
pub fn lambda_basis(q: &SetComposition) -> PrincipalModule {
    let label = q.canonicalize();
    let basis = label.rearrangements();
    let dimension = basis.len();
    debug_assert_eq!(dimension, (1..=label.len()).product::<usize>().max(1));
    PrincipalModule {
        label,
        basis,
        dimension,
    }
}

/// The radical of the graded component of support `a`, spanned by the
/// differences of each composition with its canonical rearrangement, in
/// composition-basis coordinates.
pub fn radical_basis(a: &[u32], field: Field, cap: usize) -> Result<Subspace> {
    let enumeration = enumeration(a, cap)?;
    let ambient = pi_ambient(&enumeration, field);
    let mut rows = Vec::new();
    for q in &enumeration.labels {
        let canon = q.canonicalize();
        if *q != canon {
            let diff = Element::monomial(q.clone(), field)
                .sub(&Element::monomial(canon, field));
            rows.push(element_row(&diff, &enumeration)?);
        }
    }
    Ok(Subspace::span(&ambient, &rows))
}

/// The same radical, constructed independently from differences of
/// idempotent basis elements within each rearrangement class.
pub fn radical_basis_from_idempotents(a: &[u32], field: Field, cap: usize) -> Result<Subspace> {
    let enumeration = enumeration(a, cap)?;
    let ambient = pi_ambient(&enumeration, field);
    let mut rows = Vec::new();
    for q in &enumeration.labels {
        let canon = q.canonicalize();
        if *q != canon {
            let diff = e_family(&canon, field)
                .expansion
                .sub(&e_family(q, field).expansion);
            rows.push(element_row(&diff, &enumeration)?);
        }
    }
    Ok(Subspace::span(&ambient, &rows))
}

/// A descending radical filtration: `layers[k]` is the k-th radical power,
/// `layers[0]` the whole module, the last layer zero.
#[derive(Clone, Debug)]
pub struct LoewyFiltration {
    pub layers: Vec<Subspace>,
    pub nilindex: usize,
}

impl LoewyFiltration {
    /// Dimension of the k-th layer quotient.
    pub fn layer_dim(&self, k: usize) -> usize {
        let at = |i: usize| self.layers.get(i).map_or(0, |s| s.dim());
        at(k) - at(k + 1)
    }
}

/// All compositions coarser than `q`, together with the length drop,
/// obtained by merging blocks of `q` along index compositions.
fn coarsenings(q: &SetComposition, cap: usize) -> Result<Vec<(SetComposition, usize)>> {
    let k = q.len();
    let idx: Vec<u32> = (1..=k as u32).collect();
    let mut out = Vec::new();
    for i in enumerate(&idx, EnumFilter::All, cap.max(k))? {
        let blocks: Vec<Vec<u32>> = i
            .blocks()
            .iter()
            .map(|group| {
                let mut merged = Vec::new();
                for &b in group {
                    merged.extend_from_slice(&q.blocks()[(b - 1) as usize]);
                }
                merged.sort_unstable();
                merged
            })
            .collect();
        let r = SetComposition::new(blocks)?;
        let drop = k - r.len();
        out.push((r, drop));
    }
    Ok(out)
}

/// The descending radical filtration of one principal module or of the
/// whole graded component, computed in idempotent-basis coordinates from
/// products of idempotents along coarser compositions.
pub fn loewy_filtration(
    a: &[u32],
    field: Field,
    module: Option<&SetComposition>,
    cap: usize,
) -> Result<LoewyFiltration> {
    let enumeration = enumeration(a, cap)?;
    let ambient = e_ambient(&enumeration, field);
    let modules: Vec<SetComposition> = match module {
        Some(q) => vec![q.canonicalize()],
        None => enumerate(a, EnumFilter::Canonical, cap)?,
    };
    // Spanning rows per module label, tagged with the length drop of the
    // coarse factor; the k-th power keeps the rows with drop >= k.
    let mut tagged: Vec<(usize, SparseVec)> = Vec::new();
    for q in &modules {
        let rearrangements = q.rearrangements();
        for (r, drop) in coarsenings(q, cap)? {
            for q2 in &rearrangements {
                let product = e_multiply(&r, q2, field)?;
                if !product.is_zero() {
                    tagged.push((drop, ecomb_row(&product, &enumeration)?));
                }
            }
        }
    }
    let mut layers = Vec::new();
    let mut k = 0;
    loop {
        let rows: Vec<SparseVec> = tagged
            .iter()
            .filter(|(drop, _)| *drop >= k)
            .map(|(_, row)| row.clone())
            .collect();
        let space = Subspace::span(&ambient, &rows);
        let empty = space.dim() == 0;
        layers.push(space);
        if empty {
            break;
        }
        k += 1;
    }
    let nilindex = layers.len() - 1;
    Ok(LoewyFiltration { layers, nilindex })
}

/// Independent construction of the same filtration by iterated products:
/// each power is spanned by products of the radical with a spanning set of
/// the previous power. Computed in composition-basis coordinates.
pub fn loewy_filtration_oracle(
    a: &[u32],
    field: Field,
    module: Option<&SetComposition>,
    cap: usize,
) -> Result<LoewyFiltration> {
    let enumeration = enumeration(a, cap)?;
    let ambient = pi_ambient(&enumeration, field);
    let radical_elements: Vec<Element> = {
        let mut out = Vec::new();
        for q in &enumeration.labels {
            let canon = q.canonicalize();
            if *q != canon {
                out.push(
                    Element::monomial(q.clone(), field).sub(&Element::monomial(canon, field)),
                );
            }
        }
        out
    };
    let start: Vec<Element> = match module {
        Some(q) => lambda_basis(q)
            .basis
            .iter()
            .map(|l| e_family(l, field).expansion)
            .collect(),
        None => enumeration
            .labels
            .iter()
            .map(|sc| Element::monomial(sc.clone(), field))
            .collect(),
    };
    let mut layers = Vec::new();
    let mut current = start;
    loop {
        let rows: Result<Vec<SparseVec>> =
            current.iter().map(|f| element_row(f, &enumeration)).collect();
        let space = Subspace::span(&ambient, &rows?);
        let empty = space.dim() == 0;
        // Reuse the reduced basis as the next spanning set to keep the
        // product count bounded.
        let basis_elements: Vec<Element> = space
            .rows()
            .iter()
            .map(|row| row_to_element(row, &enumeration, field))
            .collect();
        layers.push(space);
        if empty {
            break;
        }
        let mut next = Vec::new();
        for u in &radical_elements {
            for v in &basis_elements {
                let prod = u.wedge(v);
                if !prod.is_zero() {
                    next.push(prod);
                }
            }
        }
        current = next;
    }
    let nilindex = layers.len() - 1;
    Ok(LoewyFiltration { layers, nilindex })
}

/// Multiplicity of the simple module labelled `t` in the k-th Loewy layer
/// of the given filtration, computed by projecting the layer with the
/// idempotent of `t`.
pub fn simple_multiplicity_in_layer(
    t: &SetComposition,
    filtration: &LoewyFiltration,
    enumeration: &Enumeration,
    k: usize,
    field: Field,
) -> Result<usize> {
    let ambient = e_ambient(enumeration, field);
    let project = |space: &Subspace| -> Result<usize> {
        let mut rows = Vec::new();
        for row in space.rows() {
            let comb = row_to_ecomb(row, enumeration, field);
            let mut image = ECombination::zero(field);
            for (label, c) in comb.coeffs() {
                image = image.add(&e_multiply(t, label, field)?.scale(c));
            }
            if !image.is_zero() {
                rows.push(ecomb_row(&image, enumeration)?);
            }
        }
        Ok(Subspace::span(&ambient, &rows).dim())
    };
    let dim_k = match filtration.layers.get(k) {
        Some(space) => project(space)?,
        None => 0,
    };
    let dim_k1 = match filtration.layers.get(k + 1) {
        Some(space) => project(space)?,
        None => 0,
    };
    Ok(dim_k - dim_k1)
}

/// How a Cartan entry is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanMode {
    /// The closed-form product of factorials.
    Formula,
    /// The rank of the two-sided idempotent component, the oracle of
    /// record.
    Rank,
}

/// One Cartan invariant: the multiplicity of the simple module labelled
/// `p` in the principal module labelled `q`. Both labels must be
/// canonical.
pub fn cartan_entry(
    p: &SetComposition,
    q: &SetComposition,
    mode: CartanMode,
    field: Field,
    cap: usize,
) -> Result<u64> {
    if !p.is_canonical() || !q.is_canonical() {
        return Err(Error::Invalid(
            "Cartan labels must be canonical compositions".into(),
        ));
    }
    if p.support() != q.support() {
        return Err(Error::SupportMismatch(format!("{p} vs {q}")));
    }
    match mode {
        CartanMode::Formula => {
            let index = match q.refinement(p)? {
                Some(i) => i,
                None => return Ok(0),
            };
            let mut product = 1u64;
            for group in index.as_composition().blocks() {
                product *= factorial(group.len() as u64 - 1);
            }
            Ok(product)
        }
        CartanMode::Rank => {
            let enumeration = enumeration(p.support(), cap)?;
            let ambient = e_ambient(&enumeration, field);
            let mut rows = Vec::new();
            for q2 in q.rearrangements() {
                let prod = e_multiply(p, &q2, field)?;
                if !prod.is_zero() {
                    rows.push(ecomb_row(&prod, &enumeration)?);
                }
            }
            Ok(Subspace::span(&ambient, &rows).dim() as u64)
        }
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// The Cartan matrix of one graded component, rows and columns indexed by
/// the canonical compositions in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    pub labels: Vec<SetComposition>,
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "labels": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            "rows": self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn column_sum(&self, j: usize) -> u64 {
        self.entries.iter().map(|row| row[j]).sum()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.entries[i].iter().sum()
    }
}

/// The full Cartan matrix in closed form.
pub fn cartan_matrix(a: &[u32], cap: usize) -> Result<CartanMatrix> {
    let labels = enumerate(a, EnumFilter::Canonical, cap)?;
    let mut entries = Vec::with_capacity(labels.len());
    for p in &labels {
        let mut row = Vec::with_capacity(labels.len());
        for q in &labels {
            row.push(cartan_entry(p, q, CartanMode::Formula, Field::Rational, cap)?);
        }
        entries.push(row);
    }
    Ok(CartanMatrix { labels, entries })
}

/// Dimension of the right ideal generated by the idempotent labelled `p`.
/// The closed form multiplies, over the blocks of `p`, the number of
/// compositions of each block with the block minimum in front; the rank
/// mode spans the actual products and is the oracle of record.
pub fn right_ideal_dim(
    p: &SetComposition,
    mode: CartanMode,
    field: Field,
    cap: usize,
) -> Result<u64> {
    if !p.is_canonical() {
        return Err(Error::Invalid("label must be canonical".into()));
    }
    match mode {
        CartanMode::Formula => Ok(p
            .blocks()
            .iter()
            .map(|b| star_count(b.len()))
            .product()),
        CartanMode::Rank => {
            let enumeration = enumeration(p.support(), cap)?;
            let ambient = e_ambient(&enumeration, field);
            let mut rows = Vec::new();
            for q in &enumeration.labels {
                let prod = e_multiply(p, q, field)?;
                if !prod.is_zero() {
                    rows.push(ecomb_row(&prod, &enumeration)?);
                }
            }
            Ok(Subspace::span(&ambient, &rows).dim() as u64)
        }
    }
}

/// The uniform-doubling reading of the right-ideal dimension, which
/// doubles once per block regardless of block size. It overcounts by a
/// factor of two for every singleton block; kept for reporting.
pub fn right_ideal_uniform_doubling(p: &SetComposition) -> u64 {
    let l = p.len() as u32;
    let product: u64 = p
        .blocks()
        .iter()
        .map(|b| ordered_bell(b.len() - 1))
        .product();
    2u64.pow(l) * product
}

/// A directed graph on canonical set partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<SetPartition>,
    /// Edges as vertex-index pairs, coarser to finer.
    pub edges: Vec<(usize, usize)>,
}

impl Quiver {
    /// DOT output with canonical labels, edges coarser to finer.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for &(from, to) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.vertices[from], self.vertices[to]
            ));
        }
        out.push('}');
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "edges": self
                .edges
                .iter()
                .map(|(a, b)| vec![self.vertices[*a].to_string(), self.vertices[*b].to_string()])
                .collect::<Vec<_>>(),
        })
    }
}

/// The Ext-quiver of one graded component: vertices are the canonical set
/// partitions of the support, with an edge from a partition to each
/// one-step refinement.
pub fn ext_quiver(a: &[u32], cap: usize) -> Result<Quiver> {
    let canon = enumerate(a, EnumFilter::Canonical, cap)?;
    let vertices: Vec<SetPartition> = canon.iter().map(|sc| sc.support_partition()).collect();
    let mut edges = Vec::new();
    for (i, p) in canon.iter().enumerate() {
        for (j, q) in canon.iter().enumerate() {
            if q.len() == p.len() + 1 && q.refines(p)? {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    Ok(Quiver { vertices, edges })
}

/// The same quiver assembled from the covering pairs of the partition
/// lattice, which are produced by an independent merge enumeration.
pub fn ext_quiver_from_covers(n: usize, cap: usize) -> Result<Quiver> {
    let a: Vec<u32> = (1..=n as u32).collect();
    let canon = enumerate(&a, EnumFilter::Canonical, cap)?;
    let vertices: Vec<SetPartition> = canon.iter().map(|sc| sc.support_partition()).collect();
    let position: HashMap<SetPartition, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut edges = Vec::new();
    for (coarser, finer) in partition_covers(n, cap)? {
        edges.push((position[&coarser], position[&finer]));
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(Quiver { vertices, edges })
}

/// The quiver read off from first-radical-layer multiplicities: an edge
/// from `t` to `q` exactly when the simple module of `t` appears in the
/// first Loewy layer of the principal module of `q`. Verifies along the
/// way that every multiplicity is zero or one. Columns are independent
/// and computed in parallel, merged in canonical order.
pub fn ext_quiver_from_loewy(a: &[u32], field: Field, cap: usize) -> Result<Quiver> {
    use rayon::prelude::*;
    let canon = enumerate(a, EnumFilter::Canonical, cap)?;
    let enumeration = enumeration(a, cap)?;
    let vertices: Vec<SetPartition> = canon.iter().map(|sc| sc.support_partition()).collect();
    let columns: Result<Vec<Vec<(usize, usize)>>> = canon
        .par_iter()
        .enumerate()
        .map(|(j, q)| {
            let filtration = loewy_filtration(a, field, Some(q), cap)?;
            let mut column = Vec::new();
            for (i, t) in canon.iter().enumerate() {
                let mult = simple_multiplicity_in_layer(t, &filtration, &enumeration, 1, field)?;
                if mult > 1 {
                    return Err(Error::Invalid(format!(
                        "first-layer multiplicity {mult} > 1 at t={t} q={q}"
                    )));
                }
                if mult == 1 {
                    column.push((i, j));
                }
            }
            Ok(column)
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = columns?.into_iter().flatten().collect();
    edges.sort_unstable();
    Ok(Quiver { vertices, edges })
}

/// One element of the PBW-style basis: concatenation of the Dynkin images
/// of pieces whose support minima increase, recorded with the radical
/// layer it represents.
#[derive(Clone, Debug)]
pub struct PbwElement {
    pub pieces: Vec<SetComposition>,
    pub layer: usize,
    pub combination: ECombination,
}

/// The slice of the PBW-style basis spanning a complement of the
/// `(k+1)`-st radical power inside the k-th: pieces have the support
/// minimum in their last block, supports in increasing-minimum order, and
/// total length exceeding the number of pieces by exactly `k`.
pub fn loewy_pbw_basis(a: &[u32], k: usize, field: Field, cap: usize) -> Result<Vec<PbwElement>> {
    Ok(loewy_pbw_all(a, field, cap)?
        .into_iter()
        .filter(|e| e.layer == k)
        .collect())
}

/// The full PBW-style basis, all layers.
pub fn loewy_pbw_all(a: &[u32], field: Field, cap: usize) -> Result<Vec<PbwElement>> {
    let splits = enumerate(a, EnumFilter::Canonical, cap)?;
    let mut out = Vec::new();
    for split in &splits {
        // Independent choices of a min-in-last-block composition per part.
        let mut choices: Vec<Vec<SetComposition>> = Vec::with_capacity(split.len());
        for block in split.blocks() {
            choices.push(enumerate(block, EnumFilter::Dagger, cap)?);
        }
        let mut stack: Vec<Vec<SetComposition>> = vec![Vec::new()];
        for options in &choices {
            let mut next = Vec::with_capacity(stack.len() * options.len());
            for prefix in &stack {
                for opt in options {
                    let mut tuple = prefix.clone();
                    tuple.push(opt.clone());
                    next.push(tuple);
                }
            }
            stack = next;
        }
        for pieces in stack {
            let m = pieces.len();
            let total_len: usize = pieces.iter().map(|p| p.len()).sum();
            let layer = total_len - m;
            let mut combination =
                ECombination::single(SetComposition::empty(), field);
            for piece in &pieces {
                let image = Element::monomial(piece.clone(), field).dynkin();
                let mut next = ECombination::zero(field);
                for (prefix, c) in combination.coeffs() {
                    for (r, d) in image.terms() {
                        next.add_coeff(prefix.concat(r).expect("disjoint"), c.mul(d));
                    }
                }
                combination = next;
            }
            out.push(PbwElement {
                pieces,
                layer,
                combination,
            });
        }
    }
    Ok(out)
}
