//! Permutations of `{0, ..., m-1}`, generated subgroups of `Sym_m` and an
//! exact isomorphism test for small permutation groups.
//!
//! Composition follows the functional convention: `p.compose(&q)` is the map
//! `i -> p(q(i))`, so `q` acts first.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::lcm;

use crate::error::{Error, ParseErrorKind, Result};

/// Default bound on the number of elements a closure (or the node count of
/// an isomorphism search) may reach before giving up.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A bijection of `{0, ..., m-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Validates that `images` is a bijection of `{0, ..., len-1}`.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        if images.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if !is_bijection(&images) {
            return Err(Error::NotAPermutation { images });
        }
        Ok(Perm { images })
    }

    pub fn identity(m: usize) -> Result<Perm> {
        if m == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(Perm {
            images: (0..m).collect(),
        })
    }

    /// Builds a permutation of degree `m` from disjoint cycles, e.g.
    /// `from_cycles(4, &[&[1, 3]])` is the transposition `(1 3)`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= m || b >= m {
                    return Err(Error::IndexOutOfRange {
                        index: a.max(b),
                        bound: m,
                    });
                }
                images[a] = b;
            }
        }
        Perm::new(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(is_bijection(&images));
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i`. Panics if `i` is out of range.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then_unchecked(other))
    }

    // self ∘ other for callers that already know the degrees agree
    #[inline]
    pub(crate) fn then_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// Order of the permutation as a group element (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut order = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len > 0 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable();
        lengths
    }
}

/// True iff `images` lists every value of `0..images.len()` exactly once.
pub fn is_bijection(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    for &x in images {
        if x >= images.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// All permutations of degree `m` in lexicographic order of image lists.
pub fn symmetric_group(m: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        out.push(Perm {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// Whitespace-separated image list, e.g. `1 0 2`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let images = parse_index_row(s).map_err(|kind| Error::parse(1, kind))?;
        let bound = images.len();
        if let Some(&value) = images.iter().find(|&&x| x >= bound) {
            return Err(Error::parse(1, ParseErrorKind::OutOfRange { value, bound }));
        }
        Perm::new(images).map_err(|_| Error::parse(1, ParseErrorKind::NotBijective))
    }
}

pub(crate) fn parse_index_row(s: &str) -> std::result::Result<Vec<usize>, ParseErrorKind> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseErrorKind::Syntax(format!("expected a non-negative integer, found `{tok}`")))
        })
        .collect()
}

/// A finite subgroup of `Sym_m` given by generators together with its full
/// element list.
///
/// Elements are stored in breadth-first order from the identity, expanding
/// each element by the generators in input order (`g ∘ e`), so the layout is
/// reproducible for a given generator list.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

pub fn close_group(generators: &[Perm], cap: usize) -> Result<GeneratedGroup> {
    let first = generators.first().ok_or(Error::EmptyDomain)?;
    let degree = first.degree();
    if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: bad.degree(),
        });
    }

    let identity = Perm::identity(degree)?;
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = g.then_unchecked(&elements[i]);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::SizeCap {
                    what: "group closure",
                    cap,
                });
            }
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }

    Ok(GeneratedGroup {
        degree,
        generators: generators.to_vec(),
        elements,
        index,
    })
}

impl GeneratedGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Sorted list of element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements.iter().map(Perm::order).collect();
        orders.sort_unstable();
        orders
    }

    /// Index of `a ∘ b` for element indices `a`, `b`.
    fn product_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then_unchecked(&self.elements[b])]
    }

    /// Indices of a subset of the generators that still generates the
    /// group, with identities and redundant generators dropped.
    fn irredundant_generators(&self, cap: usize) -> Result<Vec<usize>> {
        let mut kept: Vec<Perm> = Vec::new();
        let mut span: HashSet<Perm> = HashSet::new();
        span.insert(Perm::identity(self.degree)?);
        for g in &self.generators {
            if span.contains(g) {
                continue;
            }
            kept.push(g.clone());
            span = close_group(&kept, cap)?.elements.into_iter().collect();
            if span.len() == self.order() {
                break;
            }
        }
        Ok(kept.iter().map(|g| self.index[g]).collect())
    }
}

/// An isomorphism between two generated groups, as a map from element
/// indices of the source to element indices of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    map: Vec<usize>,
}

impl Isomorphism {
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image<'a>(&self, source: &GeneratedGroup, target: &'a GeneratedGroup, p: &Perm) -> Option<&'a Perm> {
        source.index_of(p).map(|i| &target.elements[self.map[i]])
    }

    /// Checks bijectivity and `φ(a∘b) = φ(a)∘φ(b)` on every pair.
    pub fn is_valid(&self, source: &GeneratedGroup, target: &GeneratedGroup) -> bool {
        if self.map.len() != source.order() || source.order() != target.order() {
            return false;
        }
        if !is_bijection(&self.map) {
            return false;
        }
        (0..source.order()).all(|a| {
            (0..source.order()).all(|b| {
                self.map[source.product_index(a, b)] == target.product_index(self.map[a], self.map[b])
            })
        })
    }
}

/// Exact isomorphism test by backtracking over images of an irredundant
/// generating set of `g`, pruned by group order, the element-order multiset
/// and element orders of generator images.
///
/// Returns `Ok(None)` when the groups are not isomorphic and
/// `Err(SizeCap)` when the search visits more than `cap` nodes.
pub fn groups_isomorphic(
    g: &GeneratedGroup,
    h: &GeneratedGroup,
    cap: usize,
) -> Result<Option<Isomorphism>> {
    if g.order() != h.order() || g.element_orders() != h.element_orders() {
        return Ok(None);
    }
    let gens = g.irredundant_generators(cap)?;
    let h_orders: Vec<usize> = h.elements.iter().map(Perm::order).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let ord = g.elements[s].order();
            (0..h.order()).filter(|&t| h_orders[t] == ord).collect()
        })
        .collect();

    let mut search = IsoSearch {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        images: Vec::with_capacity(gens.len()),
        nodes: 0,
        cap,
    };
    Ok(search.run()?.map(|map| Isomorphism { map }))
}

struct IsoSearch<'a> {
    g: &'a GeneratedGroup,
    h: &'a GeneratedGroup,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    images: Vec<usize>,
    nodes: usize,
    cap: usize,
}

impl IsoSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<usize>>> {
        let level = self.images.len();
        let partial = self.extend();
        let Some(map) = partial else {
            return Ok(None);
        };
        if level == self.gens.len() {
            return Ok(Some(map.into_iter().map(|x| x.unwrap()).collect()));
        }
        for &t in &self.candidates[level] {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::SizeCap {
                    what: "isomorphism search",
                    cap: self.cap,
                });
            }
            self.images.push(t);
            let found = self.run()?;
            self.images.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Extends the currently assigned generator images to the subgroup they
    /// generate. Fails on an inconsistent edge or a non-injective map.
    fn extend(&self) -> Option<Vec<Option<usize>>> {
        let (g, h) = (self.g, self.h);
        let mut map = vec![None; g.order()];
        let mut used = vec![false; h.order()];
        map[0] = Some(0);
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            let image_e = map[e].unwrap();
            for (&s, &image_s) in self.gens.iter().zip(&self.images) {
                let target = g.product_index(s, e);
                let image = h.product_index(image_s, image_e);
                match map[target] {
                    Some(existing) if existing != image => return None,
                    Some(_) => {}
                    None => {
                        if used[image] {
                            return None;
                        }
                        used[image] = true;
                        map[target] = Some(image);
                        queue.push_back(target);
                    }
                }
            }
        }
        Some(map)
    }
}
