//! Finite involutive non-degenerate set-theoretic solutions `(X, r)` of the
//! Yang–Baxter equation with `r(x, y) = (σ_x(y), γ_y(x))`.
//!
//! `X` is always `{0, ..., m-1}`. A solution is determined by its σ-table;
//! the γ-table is derived from involutivity as `γ_y(x) = σ⁻¹_{σ_x(y)}(x)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{self, close_group, GeneratedGroup, Perm};

/// Default largest `m` accepted by [`enumerate_solutions`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// Largest set size accepted by [`solutions_isomorphic`].
pub const SOLUTION_ISO_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    sigma: Vec<Perm>,
    gamma: Vec<Perm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Involutive,
    LeftNondegenerate,
    RightNondegenerate,
    BraidDirect,
    BraidSigmaCondition,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Involutive,
        Axiom::LeftNondegenerate,
        Axiom::RightNondegenerate,
        Axiom::BraidDirect,
        Axiom::BraidSigmaCondition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Involutive => "involutive",
            Axiom::LeftNondegenerate => "left_nondegenerate",
            Axiom::RightNondegenerate => "right_nondegenerate",
            Axiom::BraidDirect => "braid_direct",
            Axiom::BraidSigmaCondition => "braid_sigma_condition",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of checking a candidate σ/γ table against the axioms.
///
/// Witnesses: `(x, y)` for involutivity and the σ-condition, `(x)` / `(y)`
/// for the non-degeneracy rows, `(x, y, z)` for the direct braid check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerifyReport {
    pub involutive: bool,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub braid_direct: bool,
    pub braid_sigma_condition: bool,
    pub counterexamples: Vec<(Axiom, Vec<usize>)>,
}

impl VerifyReport {
    pub fn flag(&self, axiom: Axiom) -> bool {
        match axiom {
            Axiom::Involutive => self.involutive,
            Axiom::LeftNondegenerate => self.left_nondegenerate,
            Axiom::RightNondegenerate => self.right_nondegenerate,
            Axiom::BraidDirect => self.braid_direct,
            Axiom::BraidSigmaCondition => self.braid_sigma_condition,
        }
    }

    pub fn all_pass(&self) -> bool {
        Axiom::ALL.iter().all(|&a| self.flag(a))
    }

    pub fn counterexample(&self, axiom: Axiom) -> Option<&[usize]> {
        self.counterexamples
            .iter()
            .find(|(a, _)| *a == axiom)
            .map(|(_, w)| w.as_slice())
    }

    /// The two braid checks must agree whenever the map is involutive and
    /// left non-degenerate.
    pub fn braid_checks_consistent(&self) -> bool {
        !(self.involutive && self.left_nondegenerate) || self.braid_direct == self.braid_sigma_condition
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<_> = Axiom::ALL.iter().filter(|&&a| !self.flag(a)).collect();
        if failed.is_empty() {
            return f.write_str("all axioms hold");
        }
        for (i, axiom) in failed.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match self.counterexample(**axiom) {
                Some(w) => write!(f, "{axiom} fails at {w:?}")?,
                None => write!(f, "{axiom} fails")?,
            }
        }
        Ok(())
    }
}

/// Checks every axiom by exhaustive loops over pairs and triples.
///
/// `sigma[x][y]` is `σ_x(y)` and `gamma[y][x]` is `γ_y(x)`. Both tables must
/// be `m × m` with entries below `m`; this is a precondition and violating it
/// panics.
pub fn verify(sigma: &[Vec<usize>], gamma: &[Vec<usize>]) -> VerifyReport {
    let m = sigma.len();
    assert!(
        gamma.len() == m && sigma.iter().chain(gamma).all(|row| row.len() == m && row.iter().all(|&v| v < m)),
        "verify: tables must be {m}x{m} with entries below {m}"
    );
    let r = |x: usize, y: usize| (sigma[x][y], gamma[y][x]);
    let mut counterexamples = Vec::new();

    let involutive = match pairs(m).find(|&(x, y)| {
        let (u, v) = r(x, y);
        r(u, v) != (x, y)
    }) {
        Some((x, y)) => {
            counterexamples.push((Axiom::Involutive, vec![x, y]));
            false
        }
        None => true,
    };

    let left_nondegenerate = match (0..m).find(|&x| !perm::is_bijection(&sigma[x])) {
        Some(x) => {
            counterexamples.push((Axiom::LeftNondegenerate, vec![x]));
            false
        }
        None => true,
    };

    let right_nondegenerate = match (0..m).find(|&y| !perm::is_bijection(&gamma[y])) {
        Some(y) => {
            counterexamples.push((Axiom::RightNondegenerate, vec![y]));
            false
        }
        None => true,
    };

    let braid_direct = match triples(m).find(|&(x, y, z)| {
        // r12 r23 r12
        let (a, b) = r(x, y);
        let (b, c) = r(b, z);
        let (a, b) = r(a, b);
        let lhs = (a, b, c);
        // r23 r12 r23
        let (y1, z1) = r(y, z);
        let (x2, y2) = r(x, y1);
        let (y3, z3) = r(y2, z1);
        lhs != (x2, y3, z3)
    }) {
        Some((x, y, z)) => {
            counterexamples.push((Axiom::BraidDirect, vec![x, y, z]));
            false
        }
        None => true,
    };

    let braid_sigma_condition = if left_nondegenerate {
        let inv: Vec<Vec<usize>> = sigma.iter().map(|row| invert_row(row)).collect();
        // σ_x ∘ σ_{σ⁻¹_x(y)} = σ_y ∘ σ_{σ⁻¹_y(x)} as maps
        match pairs(m).find(|&(x, y)| {
            let p = inv[x][y];
            let q = inv[y][x];
            (0..m).any(|z| sigma[x][sigma[p][z]] != sigma[y][sigma[q][z]])
        }) {
            Some((x, y)) => {
                counterexamples.push((Axiom::BraidSigmaCondition, vec![x, y]));
                false
            }
            None => true,
        }
    } else {
        let x = (0..m).find(|&x| !perm::is_bijection(&sigma[x])).unwrap();
        counterexamples.push((Axiom::BraidSigmaCondition, vec![x]));
        false
    };

    counterexamples.sort_by_key(|(a, _)| *a);
    VerifyReport {
        involutive,
        left_nondegenerate,
        right_nondegenerate,
        braid_direct,
        braid_sigma_condition,
        counterexamples,
    }
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |x| (0..m).map(move |y| (x, y)))
}

fn triples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(m).flat_map(move |(x, y)| (0..m).map(move |z| (x, y, z)))
}

fn invert_row(row: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; row.len()];
    for (i, &j) in row.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `γ_y(x) = σ⁻¹_{σ_x(y)}(x)`, returned as rows indexed by `y`.
pub fn derive_gamma(sigma: &[Perm]) -> Vec<Vec<usize>> {
    let m = sigma.len();
    let inv: Vec<Perm> = sigma.iter().map(Perm::inverse).collect();
    (0..m)
        .map(|y| (0..m).map(|x| inv[sigma[x].apply(y)].apply(x)).collect())
        .collect()
}

fn check_sigma_shape(sigmas: &[Perm]) -> Result<()> {
    if sigmas.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let m = sigmas.len();
    if let Some(bad) = sigmas.iter().find(|s| s.degree() != m) {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: bad.degree(),
        });
    }
    Ok(())
}

fn rows(perms: &[Perm]) -> Vec<Vec<usize>> {
    perms.iter().map(|p| p.images().to_vec()).collect()
}

impl Solution {
    /// Builds a solution from its σ-table, deriving γ and checking all five
    /// axioms. Fails with the full report if any axiom does not hold.
    pub fn from_sigma(sigmas: Vec<Perm>) -> Result<Solution> {
        check_sigma_shape(&sigmas)?;
        let gamma = derive_gamma(&sigmas);
        let report = verify(&rows(&sigmas), &gamma);
        if !report.all_pass() {
            return Err(Error::NotASolution(Box::new(report)));
        }
        Ok(Solution {
            sigma: sigmas,
            gamma: gamma.into_iter().map(Perm::from_images_unchecked).collect(),
        })
    }

    // For constructions that produce solutions by theory; callers' tests
    // run the full verification.
    fn assemble(sigmas: Vec<Perm>) -> Solution {
        let gamma = derive_gamma(&sigmas)
            .into_iter()
            .map(|row| Perm::new(row).expect("construction yields a right non-degenerate map"))
            .collect();
        Solution { sigma: sigmas, gamma }
    }

    /// `r(x, y) = (y, x)` on `m` points.
    pub fn trivial(m: usize) -> Result<Solution> {
        let id = Perm::identity(m)?;
        Ok(Solution::assemble(vec![id; m]))
    }

    pub fn size(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self, x: usize) -> &Perm {
        &self.sigma[x]
    }

    pub fn gamma(&self, y: usize) -> &Perm {
        &self.gamma[y]
    }

    pub fn sigmas(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn gammas(&self) -> &[Perm] {
        &self.gamma
    }

    pub fn r_apply(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        let m = self.size();
        for index in [x, y] {
            if index >= m {
                return Err(Error::IndexOutOfRange { index, bound: m });
            }
        }
        Ok((self.sigma[x].apply(y), self.gamma[y].apply(x)))
    }

    pub fn verify(&self) -> VerifyReport {
        verify(&rows(&self.sigma), &rows(&self.gamma))
    }

    /// Some `z` with `σ_z = id`, if any.
    pub fn fixed_point(&self) -> Option<usize> {
        self.sigma.iter().position(Perm::is_identity)
    }

    /// `σ_{x1} ∘ ... ∘ σ_{xk}` for a word `x1 ... xk` (`xk` acts first).
    pub fn sigma_product(&self, word: &[usize]) -> Result<Perm> {
        let mut product = Perm::identity(self.size())?;
        for &x in word {
            if x >= self.size() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    bound: self.size(),
                });
            }
            product = product.then_unchecked(&self.sigma[x]);
        }
        Ok(product)
    }
}

impl fmt::Debug for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solution").field("sigma", &self.sigma).finish()
    }
}

/// Disjoint union of solutions. Inside a part `r` is that part's map, across
/// parts `r(x, y) = (y, x)`. Part `k` occupies the indices after all earlier
/// parts.
pub fn disjoint_union(parts: &[Solution]) -> Result<Solution> {
    if parts.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let total: usize = parts.iter().map(Solution::size).sum();
    let mut sigmas = Vec::with_capacity(total);
    let mut offset = 0;
    for part in parts {
        for s in part.sigmas() {
            let mut images: Vec<usize> = (0..total).collect();
            for (i, &j) in s.images().iter().enumerate() {
                images[offset + i] = offset + j;
            }
            sigmas.push(Perm::from_images_unchecked(images));
        }
        offset += part.size();
    }
    Ok(Solution::assemble(sigmas))
}

/// `s ⊔ {z}` where the new last point `z` behaves trivially, so `σ_z = id`
/// and the permutation group is unchanged up to isomorphism.
pub fn adjoin_fixed_point(s: &Solution) -> Solution {
    let point = Solution::trivial(1).expect("one-point set is non-empty");
    disjoint_union(&[s.clone(), point]).expect("two parts given")
}

/// The subgroup of `Sym_X` generated by the distinct `σ_x`.
pub fn permutation_group(s: &Solution, cap: usize) -> Result<GeneratedGroup> {
    let mut gens: Vec<Perm> = Vec::new();
    for p in s.sigmas() {
        if !gens.contains(p) {
            gens.push(p.clone());
        }
    }
    close_group(&gens, cap)
}

/// Every σ-table over `Sym_m`, in lexicographic order (σ_0 most significant,
/// each slot ordered like [`perm::symmetric_group`]).
pub fn sigma_tables(m: usize) -> impl Iterator<Item = Vec<Perm>> {
    let sym = perm::symmetric_group(m);
    let mut digits = vec![0usize; m];
    let mut done = m == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let table = digits.iter().map(|&d| sym[d].clone()).collect();
        // odometer, last slot fastest
        done = true;
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < sym.len() {
                done = false;
                break;
            }
            *d = 0;
        }
        Some(table)
    })
}

/// Every solution on `m` points, by exhaustive scan of all `(m!)^m`
/// σ-tables in lexicographic order.
pub fn enumerate_solutions(m: usize, bound: usize) -> Result<Vec<Solution>> {
    if m == 0 {
        return Err(Error::EmptyDomain);
    }
    if m > bound {
        return Err(Error::BoundExceeded {
            what: "solution enumeration",
            size: m,
            bound,
        });
    }
    Ok(sigma_tables(m)
        .filter_map(|table| Solution::from_sigma(table).ok())
        .collect())
}

/// Searches for a bijection `φ` with `σ_{φ(x)} = φ ∘ σ_x ∘ φ⁻¹` for all `x`.
pub fn solutions_isomorphic(a: &Solution, b: &Solution) -> Result<Option<Perm>> {
    let m = a.size();
    if m != b.size() {
        return Ok(None);
    }
    if m > SOLUTION_ISO_BOUND {
        return Err(Error::BoundExceeded {
            what: "solution isomorphism",
            size: m,
            bound: SOLUTION_ISO_BOUND,
        });
    }
    let a_types: Vec<Vec<usize>> = a.sigmas().iter().map(Perm::cycle_type).collect();
    let b_types: Vec<Vec<usize>> = b.sigmas().iter().map(Perm::cycle_type).collect();
    let (mut sa, mut sb) = (a_types.clone(), b_types.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }

    let mut phi = vec![usize::MAX; m];
    let mut used = vec![false; m];
    if extend_solution_iso(a, b, &a_types, &b_types, 0, &mut phi, &mut used) {
        Ok(Some(Perm::from_images_unchecked(phi)))
    } else {
        Ok(None)
    }
}

fn extend_solution_iso(
    a: &Solution,
    b: &Solution,
    a_types: &[Vec<usize>],
    b_types: &[Vec<usize>],
    k: usize,
    phi: &mut [usize],
    used: &mut [bool],
) -> bool {
    let m = a.size();
    if k == m {
        return true;
    }
    for candidate in 0..m {
        if used[candidate] || a_types[k] != b_types[candidate] {
            continue;
        }
        phi[k] = candidate;
        // σ^b_{φ(x)}(φ(y)) = φ(σ^a_x(y)) for all assigned x, y, σ^a_x(y)
        let consistent = (0..=k).all(|x| {
            (0..=k).all(|y| {
                if x != k && y != k {
                    return true;
                }
                let z = a.sigma(x).apply(y);
                z > k || b.sigma(phi[x]).apply(phi[y]) == phi[z]
            })
        }) && (0..k).all(|x| {
            // pairs whose image lands on the newly assigned point
            (0..k).all(|y| a.sigma(x).apply(y) != k || b.sigma(phi[x]).apply(phi[y]) == candidate)
        });
        if consistent {
            used[candidate] = true;
            if extend_solution_iso(a, b, a_types, b_types, k + 1, phi, used) {
                return true;
            }
            used[candidate] = false;
        }
    }
    phi[k] = usize::MAX;
    false
}
