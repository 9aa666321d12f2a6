//! Set compositions and set partitions of finite subsets of the positive
//! integers: enumeration, the Tits product, restriction, refinement
//! relations, canonical representatives and covering pairs.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the support size for enumeration.
pub const DEFAULT_ENUM_CAP: usize = 9;

/// An ordered tuple of pairwise disjoint nonempty subsets of the positive
/// integers. The empty tuple is a valid value; it is the identity of the
/// concatenation product.
///
/// Blocks are stored with their elements strictly increasing; the support
/// (union of all blocks, sorted) is cached at construction.
#[derive(Clone, Debug)]
pub struct SetComposition {
    blocks: Vec<Vec<u32>>,
    support: Vec<u32>,
}

impl PartialEq for SetComposition {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for SetComposition {}

impl std::hash::Hash for SetComposition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.blocks.hash(state);
    }
}

/// Compositions are ordered by length first, then lexicographically on the
/// sequence of blocks (blocks compared as sorted integer lists). This is
/// the deterministic order used for enumeration, matrix columns and caches.
impl Ord for SetComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks
            .len()
            .cmp(&other.blocks.len())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for SetComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for block in &self.blocks {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            let strs: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", strs.join(","))?;
        }
        Ok(())
    }
}

impl SetComposition {
    /// Builds a composition from raw blocks, sorting each block and
    /// validating disjointness, nonemptiness and positivity.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        let mut support: Vec<u32> = Vec::new();
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            block.sort_unstable();
            for &x in &block {
                if x == 0 {
                    return Err(Error::Invalid("elements must be positive".into()));
                }
            }
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateElement(w[0]));
                }
            }
            support.extend_from_slice(&block);
            sorted_blocks.push(block);
        }
        support.sort_unstable();
        for w in support.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateElement(w[0]));
            }
        }
        Ok(SetComposition {
            blocks: sorted_blocks,
            support,
        })
    }

    /// The empty composition (zero blocks, empty support).
    pub fn empty() -> Self {
        SetComposition {
            blocks: Vec::new(),
            support: Vec::new(),
        }
    }

    /// The one-block composition `(A)`; the empty composition if `a` is empty.
    pub fn full(a: &[u32]) -> Self {
        if a.is_empty() {
            return Self::empty();
        }
        let mut block = a.to_vec();
        block.sort_unstable();
        block.dedup();
        SetComposition {
            support: block.clone(),
            blocks: vec![block],
        }
    }

    /// Parses the text grammar `BLOCK ('|' BLOCK)*`, `BLOCK := INT (',' INT)*`.
    /// Whitespace is ignored; the empty string is the empty composition.
    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Ok(Self::empty());
        }
        let mut blocks = Vec::new();
        for block_text in cleaned.split('|') {
            if block_text.is_empty() {
                return Err(Error::Parse(format!("empty block in {text:?}")));
            }
            let mut block = Vec::new();
            for item in block_text.split(',') {
                let x: u32 = item
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {item:?} in {text:?}")))?;
                if x == 0 {
                    return Err(Error::Parse(format!("elements must be positive in {text:?}")));
                }
                block.push(x);
            }
            blocks.push(block);
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The union of all blocks, sorted.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    /// The tuple of block sizes.
    pub fn comp_type(&self) -> IntComposition {
        IntComposition::new(self.blocks.iter().map(|b| b.len()).collect())
            .expect("blocks are nonempty")
    }

    /// The Tits product: blockwise intersections in row-major order with
    /// empty intersections deleted. Both factors must have equal support.
    pub fn tits_product(&self, other: &SetComposition) -> Result<SetComposition> {
        if self.support != other.support {
            return Err(Error::SupportMismatch(format!(
                "{} vs {}",
                self, other
            )));
        }
        let mut blocks = Vec::new();
        for p in &self.blocks {
            for q in &other.blocks {
                let inter = intersect_sorted(p, q);
                if !inter.is_empty() {
                    blocks.push(inter);
                }
            }
        }
        Ok(SetComposition {
            blocks,
            support: self.support.clone(),
        })
    }

    /// Restriction to a subset `x` of the support: blocks intersected with
    /// `x`, empty intersections deleted.
    pub fn restrict(&self, x: &[u32]) -> Result<SetComposition> {
        let mut xs = x.to_vec();
        xs.sort_unstable();
        xs.dedup();
        if !is_subset_sorted(&xs, &self.support) {
            return Err(Error::Invalid(format!(
                "restriction set {{{}}} not contained in support of {}",
                join(&xs),
                self
            )));
        }
        let mut blocks = Vec::new();
        for p in &self.blocks {
            let inter = intersect_sorted(p, &xs);
            if !inter.is_empty() {
                blocks.push(inter);
            }
        }
        Ok(SetComposition { blocks, support: xs })
    }

    /// If `self` refines `coarser` (each block of `self` is contained in a
    /// block of `coarser`), returns the index composition grouping the block
    /// indices of `self` by the block of `coarser` that contains them.
    /// Supports must agree.
    pub fn refinement(&self, coarser: &SetComposition) -> Result<Option<IndexComposition>> {
        if self.support != coarser.support {
            return Err(Error::SupportMismatch(format!("{} vs {}", self, coarser)));
        }
        let mut groups: Vec<Vec<u32>> = vec![Vec::new(); coarser.len()];
        for (i, block) in self.blocks.iter().enumerate() {
            let mut placed = false;
            for (j, coarse) in coarser.blocks.iter().enumerate() {
                if is_subset_sorted(block, coarse) {
                    groups[j].push((i + 1) as u32);
                    placed = true;
                    break;
                }
            }
            if !placed {
                return Ok(None);
            }
        }
        let sc = SetComposition::new(groups).expect("index groups are disjoint and nonempty");
        Ok(Some(IndexComposition(sc)))
    }

    /// Refinement with the additional condition that, for each coarse block,
    /// the minimum of that block lies in the *last* fine block of the
    /// restricted piece. Returns the same index composition as
    /// [`refinement`](Self::refinement) when present.
    pub fn dagger_refinement(&self, coarser: &SetComposition) -> Result<Option<IndexComposition>> {
        let index = match self.refinement(coarser)? {
            Some(i) => i,
            None => return Ok(None),
        };
        for (j, group) in index.0.blocks().iter().enumerate() {
            let min_coarse = coarser.blocks[j][0];
            let last = &self.blocks[(*group.last().unwrap() as usize) - 1];
            if last.binary_search(&min_coarse).is_err() {
                return Ok(None);
            }
        }
        Ok(Some(index))
    }

    /// True when each block of `self` is contained in a block of `coarser`.
    pub fn refines(&self, coarser: &SetComposition) -> Result<bool> {
        Ok(self.refinement(coarser)?.is_some())
    }

    /// True when `other` is a reordering of the blocks of `self`.
    pub fn is_rearrangement_of(&self, other: &SetComposition) -> bool {
        if self.blocks.len() != other.blocks.len() {
            return false;
        }
        let mut a: Vec<&Vec<u32>> = self.blocks.iter().collect();
        let mut b: Vec<&Vec<u32>> = other.blocks.iter().collect();
        a.sort();
        b.sort();
        a == b
    }

    /// Forgets the order of the blocks.
    pub fn support_partition(&self) -> SetPartition {
        SetPartition::new(self.blocks.clone()).expect("blocks are valid")
    }

    /// The rearrangement with block minima increasing.
    pub fn canonicalize(&self) -> SetComposition {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        SetComposition {
            blocks,
            support: self.support.clone(),
        }
    }

    /// True when block minima are strictly increasing.
    pub fn is_canonical(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0][0] < w[1][0])
    }

    /// True when the minimum of the support lies in the first block.
    pub fn is_star(&self) -> bool {
        match self.support.first() {
            Some(m) => self.blocks[0].binary_search(m).is_ok(),
            None => false,
        }
    }

    /// True when the minimum of the support lies in the last block.
    pub fn is_dagger(&self) -> bool {
        match self.support.first() {
            Some(m) => self.blocks.last().unwrap().binary_search(m).is_ok(),
            None => false,
        }
    }

    /// All reorderings of the blocks, sorted in the canonical order.
    pub fn rearrangements(&self) -> Vec<SetComposition> {
        use itertools::Itertools;
        let k = self.blocks.len();
        let mut out: Vec<SetComposition> = (0..k)
            .permutations(k)
            .map(|perm| {
                let blocks: Vec<Vec<u32>> = perm.iter().map(|&i| self.blocks[i].clone()).collect();
                SetComposition {
                    blocks,
                    support: self.support.clone(),
                }
            })
            .collect();
        if out.is_empty() {
            out.push(self.clone());
        }
        out.sort();
        out.dedup();
        out
    }

    /// The blocks in reverse order.
    pub fn reversed(&self) -> SetComposition {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        SetComposition {
            blocks,
            support: self.support.clone(),
        }
    }

    /// Concatenation with a composition of disjoint support.
    pub fn concat(&self, other: &SetComposition) -> Result<SetComposition> {
        if !intersect_sorted(&self.support, &other.support).is_empty() {
            return Err(Error::Invalid(format!(
                "overlapping supports: {} and {}",
                self, other
            )));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        let mut support = self.support.clone();
        support.extend_from_slice(&other.support);
        support.sort_unstable();
        Ok(SetComposition { blocks, support })
    }

    /// Applies an injective relabelling to every element.
    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<SetComposition> {
        let blocks: Vec<Vec<u32>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| map(x)).collect())
            .collect();
        SetComposition::new(blocks)
    }

    /// Selects the blocks with the given 1-based indices, in ascending
    /// index order.
    pub fn select_blocks(&self, indices: &[u32]) -> SetComposition {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        let blocks: Vec<Vec<u32>> = idx
            .iter()
            .map(|&i| self.blocks[(i - 1) as usize].clone())
            .collect();
        SetComposition::new(blocks).expect("selected blocks are valid")
    }
}

/// A set composition of the index set `{1, …, k}`, recording how the blocks
/// of a finer composition group inside a coarser one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexComposition(pub SetComposition);

impl IndexComposition {
    pub fn as_composition(&self) -> &SetComposition {
        &self.0
    }
}

impl fmt::Display for IndexComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An unordered set partition, stored canonically with blocks sorted by
/// their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<u32>>,
}

impl SetPartition {
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let sc = SetComposition::new(blocks)?;
        Ok(sc.support_partition_internal())
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The canonical set composition with the same blocks.
    pub fn to_composition(&self) -> SetComposition {
        SetComposition::new(self.blocks.clone()).expect("canonical blocks are valid")
    }
}

impl SetComposition {
    fn support_partition_internal(&self) -> SetPartition {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b[0]);
        SetPartition { blocks }
    }
}

impl Ord for SetPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks
            .len()
            .cmp(&other.blocks.len())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_composition().fmt(f)
    }
}

/// A composition of a positive integer: a nonempty list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntComposition {
    parts: Vec<usize>,
}

impl IntComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("composition parts must be positive".into()));
        }
        Ok(IntComposition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The first part.
    pub fn first_part(&self) -> usize {
        self.parts[0]
    }

    /// The parts sorted weakly decreasing.
    pub fn to_partition(&self) -> IntPartition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition { parts }
    }

    /// True when `other` is a rearrangement of `self`.
    pub fn is_rearrangement_of(&self, other: &IntComposition) -> bool {
        self.to_partition() == other.to_partition()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = Vec::new();
        for item in cleaned.split(',') {
            let p: usize = item
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {item:?} in {text:?}")))?;
            parts.push(p);
        }
        Self::new(parts)
    }

    /// All compositions of `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<IntComposition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, current: &mut Vec<usize>, out: &mut Vec<IntComposition>) {
            if remaining == 0 {
                out.push(IntComposition {
                    parts: current.clone(),
                });
                return;
            }
            for p in 1..=remaining {
                current.push(p);
                rec(remaining - p, current, out);
                current.pop();
            }
        }
        rec(n, &mut current, &mut out);
        out
    }
}

impl fmt::Display for IntComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// A partition of a positive integer: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("partition parts must be weakly decreasing".into()));
        }
        Ok(IntPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// True when no part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: usize) -> bool {
        let mut run = 1;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= p {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        run < p
    }

    pub fn to_composition(&self) -> IntComposition {
        IntComposition {
            parts: self.parts.clone(),
        }
    }

    /// All partitions of `n`, largest part first, in reverse lexicographic
    /// order: `(n)` first, `(1,…,1)` last.
    pub fn all(n: usize) -> Vec<IntPartition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
            if remaining == 0 {
                out.push(IntPartition {
                    parts: current.clone(),
                });
                return;
            }
            let hi = remaining.min(max);
            for p in (1..=hi).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(n, n, &mut current, &mut out);
        out
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Which subset of compositions to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumFilter {
    /// Every ordered set partition of the support.
    All,
    /// Block minima strictly increasing: one representative per
    /// rearrangement class.
    Canonical,
    /// The minimum of the support lies in the first block.
    Star,
    /// The minimum of the support lies in the last block.
    Dagger,
}

/// Enumerates the set compositions of `support` selected by `filter`, in
/// the canonical deterministic order (length, then lexicographic on the
/// block sequence). The empty support yields the single empty composition
/// under `All` and nothing under the other filters, whose defining minimum
/// does not exist.
pub fn enumerate(support: &[u32], filter: EnumFilter, cap: usize) -> Result<Vec<SetComposition>> {
    let mut elems = support.to_vec();
    elems.sort_unstable();
    for w in elems.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateElement(w[0]));
        }
    }
    if elems.first() == Some(&0) {
        return Err(Error::Invalid("elements must be positive".into()));
    }
    if elems.len() > cap {
        return Err(Error::CapExceeded(format!(
            "support size {} exceeds cap {}",
            elems.len(),
            cap
        )));
    }
    if elems.is_empty() {
        return Ok(match filter {
            EnumFilter::All => vec![SetComposition::empty()],
            _ => Vec::new(),
        });
    }
    let mut out = match filter {
        EnumFilter::Canonical => canonical_compositions(&elems),
        EnumFilter::All => all_compositions(&elems),
        EnumFilter::Star => {
            let mut v = all_compositions(&elems);
            v.retain(|sc| sc.is_star());
            v
        }
        EnumFilter::Dagger => {
            let mut v = all_compositions(&elems);
            v.retain(|sc| sc.is_dagger());
            v
        }
    };
    out.sort();
    Ok(out)
}

fn all_compositions(elems: &[u32]) -> Vec<SetComposition> {
    fn rec(elems: &[u32]) -> Vec<Vec<Vec<u32>>> {
        if elems.is_empty() {
            return vec![Vec::new()];
        }
        let n = elems.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let mut first = Vec::new();
            let mut rest = Vec::new();
            for (i, &x) in elems.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    first.push(x);
                } else {
                    rest.push(x);
                }
            }
            for mut tail in rec(&rest) {
                let mut blocks = Vec::with_capacity(tail.len() + 1);
                blocks.push(first.clone());
                blocks.append(&mut tail);
                out.push(blocks);
            }
        }
        out
    }
    rec(elems)
        .into_iter()
        .map(|blocks| {
            let support = elems.to_vec();
            SetComposition { blocks, support }
        })
        .collect()
}

/// Enumerates canonical compositions directly via restricted growth
/// strings; blocks come out ordered by first occurrence, which is the
/// order by minima.
fn canonical_compositions(elems: &[u32]) -> Vec<SetComposition> {
    let n = elems.len();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn rec(
        i: usize,
        max_used: usize,
        elems: &[u32],
        assignment: &mut Vec<usize>,
        out: &mut Vec<SetComposition>,
    ) {
        let n = elems.len();
        if i == n {
            let nblocks = max_used;
            let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); nblocks];
            for (j, &b) in assignment.iter().enumerate() {
                blocks[b].push(elems[j]);
            }
            let support = elems.to_vec();
            out.push(SetComposition { blocks, support });
            return;
        }
        for b in 0..=max_used {
            assignment[i] = b;
            rec(
                i + 1,
                max_used.max(b + 1),
                elems,
                assignment,
                out,
            );
        }
    }
    rec(0, 0, elems, &mut assignment, &mut out);
    out
}

/// All covering pairs `(coarser, finer)` of the partition lattice on
/// `{1,…,n}`: the coarser partition arises from the finer by merging
/// exactly two blocks.
pub fn partition_covers(n: usize, cap: usize) -> Result<Vec<(SetPartition, SetPartition)>> {
    if n == 0 || n > cap {
        return Err(Error::CapExceeded(format!("n = {n} out of range 1..={cap}")));
    }
    let elems: Vec<u32> = (1..=n as u32).collect();
    let mut finer: Vec<SetPartition> = canonical_compositions(&elems)
        .into_iter()
        .map(|sc| sc.support_partition_internal())
        .collect();
    finer.sort();
    let mut out = Vec::new();
    for q in &finer {
        let k = q.len();
        for i in 0..k {
            for j in (i + 1)..k {
                let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(k - 1);
                let mut merged = q.blocks()[i].clone();
                merged.extend_from_slice(&q.blocks()[j]);
                merged.sort_unstable();
                blocks.push(merged);
                for (m, b) in q.blocks().iter().enumerate() {
                    if m != i && m != j {
                        blocks.push(b.clone());
                    }
                }
                let p = SetPartition::new(blocks).expect("merged blocks are valid");
                out.push((p, q.clone()));
            }
        }
    }
    Ok(out)
}

/// Ordered Bell number: the number of set compositions of an `n`-set.
pub fn ordered_bell(n: usize) -> u64 {
    assert!(n <= 15, "ordered_bell overflows u64 past n = 15");
    // a(n) = sum_{k=1}^{n} C(n,k) a(n-k)
    let mut a = vec![0u64; n + 1];
    a[0] = 1;
    for m in 1..=n {
        let mut total = 0u64;
        for k in 1..=m {
            total += binomial(m, k) * a[m - k];
        }
        a[m] = total;
    }
    a[n]
}

/// Bell number: the number of set partitions of an `n`-set.
pub fn bell(n: usize) -> u64 {
    assert!(n <= 20, "bell overflows u64 past n = 20");
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) as u64 / (i + 1) as u64;
    }
    result
}

/// Number of compositions with the minimum of the support in the first
/// block: `2 * ordered_bell(m - 1)` for `m >= 2`, and `1` for `m <= 1`.
pub fn star_count(m: usize) -> u64 {
    match m {
        0 | 1 => 1,
        _ => 2 * ordered_bell(m - 1),
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset_sorted(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn join(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(text: &str) -> SetComposition {
        SetComposition::parse(text).unwrap()
    }

    #[test]
    fn parse_and_format_round_trip() {
        let p = sc("1,3|5|4|2,6");
        assert_eq!(
            p.blocks(),
            &[vec![1, 3], vec![5], vec![4], vec![2, 6]]
        );
        assert_eq!(p.to_string(), "1,3|5|4|2,6");
        assert_eq!(sc("3 , 1 | 2").to_string(), "1,3|2");
        assert_eq!(sc("").to_string(), "");
        assert!(sc("").is_empty());
    }

    #[test]
    fn parse_rejects_duplicates_and_syntax_errors() {
        assert!(matches!(
            SetComposition::parse("1|1,2"),
            Err(Error::DuplicateElement(1))
        ));
        assert!(matches!(
            SetComposition::parse("1,1|2"),
            Err(Error::DuplicateElement(1))
        ));
        assert!(SetComposition::parse("1||2").is_err());
        assert!(SetComposition::parse("a|b").is_err());
        assert!(SetComposition::parse("0|1").is_err());
    }

    #[test]
    fn enumerate_counts() {
        let a2: Vec<u32> = vec![1, 2];
        let all2 = enumerate(&a2, EnumFilter::All, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(
            all2.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            vec!["1,2", "1|2", "2|1"]
        );
        let a3: Vec<u32> = vec![1, 2, 3];
        assert_eq!(enumerate(&a3, EnumFilter::All, 9).unwrap().len(), 13);
        assert_eq!(enumerate(&a3, EnumFilter::Canonical, 9).unwrap().len(), 5);
        assert_eq!(enumerate(&a3, EnumFilter::Star, 9).unwrap().len(), 6);
        for n in 1..=5usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            assert_eq!(
                enumerate(&a, EnumFilter::All, 9).unwrap().len() as u64,
                ordered_bell(n)
            );
            assert_eq!(
                enumerate(&a, EnumFilter::Canonical, 9).unwrap().len() as u64,
                bell(n)
            );
            if n >= 2 {
                assert_eq!(
                    enumerate(&a, EnumFilter::Star, 9).unwrap().len() as u64,
                    2 * ordered_bell(n - 1)
                );
                assert_eq!(
                    enumerate(&a, EnumFilter::Dagger, 9).unwrap().len() as u64,
                    2 * ordered_bell(n - 1)
                );
            }
        }
    }

    #[test]
    fn enumerate_empty_support_and_cap() {
        assert_eq!(enumerate(&[], EnumFilter::All, 9).unwrap().len(), 1);
        assert!(enumerate(&[], EnumFilter::Star, 9).unwrap().is_empty());
        assert!(enumerate(&[], EnumFilter::Canonical, 9).unwrap().is_empty());
        assert!(matches!(
            enumerate(&[1, 2, 3], EnumFilter::All, 2),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn tits_product_worked_example() {
        let p = sc("3,6,7|5,8");
        let q = sc("8|6,7|3|5");
        assert_eq!(p.tits_product(&q).unwrap().to_string(), "6,7|3|8|5");
        assert_eq!(sc("1,2|3").tits_product(&sc("1,3|2")).unwrap(), sc("1|2|3"));
        assert!(sc("1,2").tits_product(&sc("1,3")).is_err());
    }

    #[test]
    fn tits_product_is_idempotent_and_associative_small() {
        for n in 1..=3usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            for p in &all {
                assert_eq!(p.tits_product(p).unwrap(), *p);
                let id = SetComposition::full(&a);
                assert_eq!(id.tits_product(p).unwrap(), *p);
                assert_eq!(p.tits_product(&id).unwrap(), *p);
            }
            for p in &all {
                for q in &all {
                    for r in &all {
                        let lhs = p.tits_product(q).unwrap().tits_product(r).unwrap();
                        let rhs = p.tits_product(&q.tits_product(r).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn tits_product_associative_randomized() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(20240811);
        for n in 4..=5usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            for _ in 0..300 {
                let p = all.choose(&mut rng).unwrap();
                let q = all.choose(&mut rng).unwrap();
                let r = all.choose(&mut rng).unwrap();
                let lhs = p.tits_product(q).unwrap().tits_product(r).unwrap();
                let rhs = p.tits_product(&q.tits_product(r).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(p.tits_product(p).unwrap(), *p);
            }
        }
    }

    #[test]
    fn refinement_matches_product_characterization() {
        // Q refines P exactly when Q = Q /\ P.
        for n in 1..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            for q in &all {
                for p in &all {
                    let by_refinement = q.refines(p).unwrap();
                    let by_product = q.tits_product(p).unwrap() == *q;
                    assert_eq!(by_refinement, by_product, "q={q} p={p}");
                }
            }
        }
    }

    #[test]
    fn refinement_worked_examples() {
        let q = sc("8|6,7|3|5");
        let p = sc("3,6,7|5,8");
        let i = q.refinement(&p).unwrap().unwrap();
        assert_eq!(i.to_string(), "2,3|1,4");
        // The product of coarser by finer concatenates the grouped pieces.
        let mut concat = SetComposition::empty();
        for group in i.as_composition().blocks() {
            concat = concat.concat(&q.select_blocks(group)).unwrap();
        }
        assert_eq!(p.tits_product(&q).unwrap(), concat);

        let q2 = sc("1|2|3");
        let i2 = q2.refinement(&sc("1,2|3")).unwrap().unwrap();
        assert_eq!(i2.to_string(), "1,2|3");
        let q3 = sc("4|1|2,5|3");
        let i3 = q3.refinement(&q3).unwrap().unwrap();
        assert_eq!(i3.to_string(), "1|2|3|4");
        assert!(sc("1,2|3").refinement(&sc("1,3|2")).unwrap().is_none());
    }

    #[test]
    fn dagger_refinement_examples() {
        assert!(sc("4|5|1,3|2")
            .dagger_refinement(&sc("1,2,3|4,5"))
            .unwrap()
            .is_none());
        let i = sc("3,4|1|2").dagger_refinement(&sc("2,3,4|1")).unwrap();
        assert_eq!(i.unwrap().to_string(), "1,3|2");
        // Between canonical representatives the relation only holds reflexively.
        let a: Vec<u32> = vec![1, 2, 3, 4];
        let canon = enumerate(&a, EnumFilter::Canonical, 9).unwrap();
        for t in &canon {
            for s in &canon {
                let holds = t.dagger_refinement(s).unwrap().is_some();
                assert_eq!(holds, s == t, "t={t} s={s}");
            }
        }
    }

    #[test]
    fn support_partition_forgets_order() {
        let sp = sc("2|1,3").support_partition();
        assert_eq!(sp.to_string(), "1,3|2");
        assert_eq!(sc("1,3|2").support_partition(), sp);
        assert!(SetComposition::empty().support_partition().is_empty());
    }

    #[test]
    fn support_map_is_a_morphism() {
        // The support of a product depends only on the two supports and is
        // the lattice meet (common refinement, forgetting order).
        for n in 1..=4usize {
            let a: Vec<u32> = (1..=n as u32).collect();
            let all = enumerate(&a, EnumFilter::All, 9).unwrap();
            use std::collections::HashMap;
            let mut seen: HashMap<(SetPartition, SetPartition), SetPartition> = HashMap::new();
            for p in &all {
                for q in &all {
                    let prod = p.tits_product(q).unwrap().support_partition();
                    let key = (p.support_partition(), q.support_partition());
                    match seen.get(&key) {
                        None => {
                            seen.insert(key, prod);
                        }
                        Some(existing) => assert_eq!(*existing, prod),
                    }
                }
            }
        }
    }

    #[test]
    fn covers_counts() {
        assert!(partition_covers(1, 9).unwrap().is_empty());
        let c2 = partition_covers(2, 9).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].0.to_string(), "1,2");
        assert_eq!(c2[0].1.to_string(), "1|2");
        let c3 = partition_covers(3, 9).unwrap();
        assert_eq!(c3.len(), 6);
        // Brute force: all (coarser, finer) pairs differing by one block.
        let a: Vec<u32> = vec![1, 2, 3, 4];
        let parts: Vec<SetPartition> = enumerate(&a, EnumFilter::Canonical, 9)
            .unwrap()
            .into_iter()
            .map(|sc| sc.support_partition())
            .collect();
        let mut brute = Vec::new();
        for p in &parts {
            for q in &parts {
                if q.len() == p.len() + 1
                    && q.to_composition().refines(&p.to_composition()).unwrap()
                {
                    brute.push((p.clone(), q.clone()));
                }
            }
        }
        let mut c4 = partition_covers(4, 9).unwrap();
        c4.sort();
        brute.sort();
        assert_eq!(c4, brute);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(sc("1,3|5|4|2,6").restrict(&[1, 2, 3]).unwrap(), sc("1,3|2"));
        let p = sc("1,4|2|3");
        assert_eq!(p.restrict(p.support()).unwrap(), p);
        assert_eq!(p.restrict(&[]).unwrap(), SetComposition::empty());
        assert!(p.restrict(&[9]).is_err());
    }

    #[test]
    fn counting_helpers() {
        assert_eq!(
            (0..=6).map(ordered_bell).collect::<Vec<_>>(),
            vec![1, 1, 3, 13, 75, 541, 4683]
        );
        assert_eq!(
            (0..=6).map(bell).collect::<Vec<_>>(),
            vec![1, 1, 2, 5, 15, 52, 203]
        );
        assert_eq!(star_count(1), 1);
        assert_eq!(star_count(3), 6);
    }

    #[test]
    fn partitions_and_compositions_of_integers() {
        assert_eq!(IntComposition::all(3).len(), 4);
        assert_eq!(IntPartition::all(4).len(), 5);
        assert_eq!(IntPartition::all(4)[0].parts(), &[4]);
        let p = IntPartition::new(vec![3, 1]).unwrap();
        assert!(p.is_p_regular(2));
        let q = IntPartition::new(vec![2, 2]).unwrap();
        assert!(!q.is_p_regular(2));
        assert!(q.is_p_regular(3));
        assert!(IntPartition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn canonical_order_is_length_graded() {
        let a: Vec<u32> = vec![1, 2, 3];
        let all = enumerate(&a, EnumFilter::All, 9).unwrap();
        assert_eq!(all[0].to_string(), "1,2,3");
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].len() <= w[1].len());
        }
    }
}
