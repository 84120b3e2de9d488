//! Finite left braces `(G, +, ·)` with `a·(b+c) + a = a·b + a·c`.
//!
//! Elements are `{0, ..., k-1}` and `0` must be the identity of both
//! operations. In a left brace the two identities always coincide: taking
//! `a = e` (the multiplicative identity) in the brace property gives
//! `b + c + e = b + c`, so `e` is the additive identity. Tables that do not
//! put both identities at `0` are rejected, not relabeled.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{self, symmetric_group, Perm};
use crate::power::h_components;
use crate::solution::Solution;

/// Largest order accepted by [`find_braces`].
pub const BRACE_SEARCH_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraceAxiom {
    Shape,
    AddIdentity,
    AddCommutative,
    AddInverse,
    AddAssociative,
    MulIdentity,
    MulInverse,
    MulAssociative,
    BraceProperty,
}

impl fmt::Display for BraceAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BraceAxiom::Shape => "table shape",
            BraceAxiom::AddIdentity => "additive identity",
            BraceAxiom::AddCommutative => "additive commutativity",
            BraceAxiom::AddInverse => "additive inverses",
            BraceAxiom::AddAssociative => "additive associativity",
            BraceAxiom::MulIdentity => "multiplicative identity",
            BraceAxiom::MulInverse => "multiplicative inverses",
            BraceAxiom::MulAssociative => "multiplicative associativity",
            BraceAxiom::BraceProperty => "brace property",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Brace {
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    inv: Vec<usize>,
}

fn fail(axiom: BraceAxiom, witness: Vec<usize>) -> Error {
    Error::BraceAxiom { axiom, witness }
}

fn check_shape(table: &[Vec<usize>], k: usize) -> Result<()> {
    if table.len() != k {
        return Err(fail(BraceAxiom::Shape, vec![table.len()]));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(fail(BraceAxiom::Shape, vec![a]));
        }
        if let Some(b) = row.iter().position(|&v| v >= k) {
            return Err(fail(BraceAxiom::Shape, vec![a, b]));
        }
    }
    Ok(())
}

// first x with a ∘ x = 0 and x ∘ a = 0
fn two_sided_inverse(table: &[Vec<usize>], a: usize) -> Option<usize> {
    (0..table.len()).find(|&x| table[a][x] == 0 && table[x][a] == 0)
}

fn first_triple(k: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn first_pair(k: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..k)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .find(|&(a, b)| bad(a, b))
        .map(|(a, b)| vec![a, b])
}

/// Validates both tables exhaustively and returns the brace, or the first
/// failing axiom with a witness.
pub fn brace_from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Brace> {
    let k = add.len();
    if k == 0 {
        return Err(Error::EmptyDomain);
    }
    check_shape(&add, k)?;
    check_shape(&mul, k)?;

    if let Some(a) = (0..k).find(|&a| add[0][a] != a || add[a][0] != a) {
        return Err(fail(BraceAxiom::AddIdentity, vec![a]));
    }
    if let Some(w) = first_pair(k, |a, b| add[a][b] != add[b][a]) {
        return Err(fail(BraceAxiom::AddCommutative, w));
    }
    let neg = (0..k)
        .map(|a| two_sided_inverse(&add, a).ok_or_else(|| fail(BraceAxiom::AddInverse, vec![a])))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = first_triple(k, |a, b, c| add[add[a][b]][c] != add[a][add[b][c]]) {
        return Err(fail(BraceAxiom::AddAssociative, w));
    }

    if let Some(a) = (0..k).find(|&a| mul[0][a] != a || mul[a][0] != a) {
        return Err(fail(BraceAxiom::MulIdentity, vec![a]));
    }
    let inv = (0..k)
        .map(|a| two_sided_inverse(&mul, a).ok_or_else(|| fail(BraceAxiom::MulInverse, vec![a])))
        .collect::<Result<Vec<_>>>()?;
    if let Some(w) = first_triple(k, |a, b, c| mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
        return Err(fail(BraceAxiom::MulAssociative, w));
    }

    // a·(b+c) + a = a·b + a·c
    if let Some(w) = first_triple(k, |a, b, c| add[mul[a][add[b][c]]][a] != add[mul[a][b]][mul[a][c]]) {
        return Err(fail(BraceAxiom::BraceProperty, w));
    }

    Ok(Brace { add, mul, neg, inv })
}

/// The brace with `a·b = a + b`.
pub fn trivial_brace(add: Vec<Vec<usize>>) -> Result<Brace> {
    brace_from_tables(add.clone(), add)
}

/// Addition table of `ℤ/k`.
pub fn cyclic_group_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

/// Addition table of `ℤ/2 × ℤ/2`, elements encoded as two-bit integers.
pub fn klein_four_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

impl Brace {
    /// Builds a brace without checking any axiom. Inverses default to `0`
    /// where none exists. Meant for feeding deliberately broken tables to
    /// the property checkers.
    pub fn from_tables_unchecked(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Brace {
        let k = add.len();
        let neg = (0..k).map(|a| two_sided_inverse(&add, a).unwrap_or(0)).collect();
        let inv = (0..k).map(|a| two_sided_inverse(&mul, a).unwrap_or(0)).collect();
        Brace { add, mul, neg, inv }
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a - b`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a][self.neg[b]]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// `x_1 · x_2 ⋯ x_n`; the empty product is `0`.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul[acc][x])
    }

    /// `λ_a(b) = a·b − a`.
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.sub(self.mul[a][b], a)
    }

    fn lambda_rows(&self) -> Vec<Vec<usize>> {
        let k = self.order();
        (0..k).map(|a| (0..k).map(|b| self.lambda(a, b)).collect()).collect()
    }
}

impl fmt::Debug for Brace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Brace")
            .field("add", &self.add)
            .field("mul", &self.mul)
            .finish()
    }
}

/// The maps `λ_a`, indexed by `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTable {
    pub maps: Vec<Perm>,
}

impl LambdaTable {
    pub fn get(&self, a: usize) -> &Perm {
        &self.maps[a]
    }
}

pub fn lambda_table(b: &Brace) -> LambdaTable {
    let maps = b
        .lambda_rows()
        .into_iter()
        .map(|row| Perm::new(row).expect("λ_a is bijective in a left brace"))
        .collect();
    LambdaTable { maps }
}

/// One flag per listed property of the λ-maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    /// `λ_a` bijective with `λ_a⁻¹ = λ_{a⁻¹}`.
    pub bijective: bool,
    /// `λ_a(x + y) = λ_a(x) + λ_a(y)`.
    pub additive: bool,
    /// `λ_a λ_b = λ_{ab}`.
    pub multiplicative: bool,
    /// `a + b = a·λ_a⁻¹(b)`.
    pub sum_as_product: bool,
    /// `a·λ_a⁻¹(b) = b·λ_b⁻¹(a)`.
    pub symmetric_product: bool,
    /// `λ_a λ_{λ_a⁻¹(b)} = λ_b λ_{λ_b⁻¹(a)}`.
    pub sigma_condition: bool,
}

impl LambdaReport {
    pub fn flags(&self) -> [(&'static str, bool); 6] {
        [
            ("bijective_with_inverse_lambda", self.bijective),
            ("additive_automorphism", self.additive),
            ("lambda_homomorphism", self.multiplicative),
            ("sum_as_product", self.sum_as_product),
            ("symmetric_product", self.symmetric_product),
            ("sigma_condition", self.sigma_condition),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.flags().iter().all(|(_, ok)| *ok)
    }
}

/// Exhaustive check of the six λ-map identities on every tuple of elements.
pub fn check_lambda_properties(b: &Brace) -> LambdaReport {
    let k = b.order();
    let lam = b.lambda_rows();
    let inverse_rows: Option<Vec<Vec<usize>>> = lam
        .iter()
        .map(|row| perm::is_bijection(row).then(|| Perm::from_images_unchecked(row.clone()).inverse().images().to_vec()))
        .collect();

    let bijective = inverse_rows.is_some()
        && (0..k).all(|a| (0..k).all(|x| lam[b.inv(a)][lam[a][x]] == x));
    let additive = first_triple(k, |a, x, y| lam[a][b.add(x, y)] != b.add(lam[a][x], lam[a][y])).is_none();
    let multiplicative = first_triple(k, |a, c, x| lam[a][lam[c][x]] != lam[b.mul(a, c)][x]).is_none();

    let (sum_as_product, symmetric_product, sigma_condition) = match &inverse_rows {
        None => (false, false, false),
        Some(li) => (
            first_pair(k, |a, c| b.add(a, c) != b.mul(a, li[a][c])).is_none(),
            first_pair(k, |a, c| b.mul(a, li[a][c]) != b.mul(c, li[c][a])).is_none(),
            first_triple(k, |a, c, x| lam[a][lam[li[a][c]][x]] != lam[c][lam[li[c][a]][x]]).is_none(),
        ),
    };

    LambdaReport {
        bijective,
        additive,
        multiplicative,
        sum_as_product,
        symmetric_product,
        sigma_condition,
    }
}

/// The solution `r(x, y) = (λ_x(y), λ⁻¹_{λ_x(y)}(x))` on the brace's
/// elements.
pub fn associated_solution(b: &Brace) -> Result<Solution> {
    let s = Solution::from_sigma(lambda_table(b).maps)?;
    for y in 0..b.order() {
        for x in 0..b.order() {
            let expected = b.lambda(b.inv(b.lambda(x, y)), x);
            if s.gamma(y).apply(x) != expected {
                return Err(Error::Inconsistent(format!(
                    "γ_{y}({x}) = {} but λ⁻¹_(λ_x(y))(x) = {expected}",
                    s.gamma(y).apply(x)
                )));
            }
        }
    }
    Ok(s)
}

/// Checks, with `X` the whole brace and `σ = λ`, that for `P = x_1⋯x_n`
///
/// ```text
/// λ_P(y_1⋯y_j) = h_1⋯h_j                          for 1 ≤ j ≤ n
/// h_j = λ_P(y_1⋯y_{j-1})⁻¹ · λ_P(y_1⋯y_j)         for 2 ≤ j ≤ n
/// ```
///
/// where `h_j = h_j(x̄, ȳ)` comes from the power-solution recursion.
pub fn check_lambda_product_expansion(b: &Brace, xbar: &[usize], ybar: &[usize]) -> Result<bool> {
    let table = lambda_table(b);
    let h = h_components(&table.maps, xbar, ybar)?;
    let p = b.product(xbar);
    let lambda_prefix = |j: usize| b.lambda(p, b.product(&ybar[..j]));

    let expansion = (1..=ybar.len()).all(|j| lambda_prefix(j) == b.product(&h[..j]));
    let quotient = (2..=ybar.len()).all(|j| h[j - 1] == b.mul(b.inv(lambda_prefix(j - 1)), lambda_prefix(j)));
    Ok(expansion && quotient)
}

/// Checks that `ȳ ↦ (H_1, ..., H_n)` with
/// `H_1 = λ⁻¹_P(y_1)` and `H_j = λ⁻¹_P(y_1⋯y_{j-1})⁻¹ · λ⁻¹_P(y_1⋯y_j)`
/// inverts `f_x̄` at `ȳ`, i.e. sends `f_x̄(ȳ)` back to `ȳ`.
pub fn check_inverse_components(b: &Brace, xbar: &[usize], ybar: &[usize]) -> Result<bool> {
    let table = lambda_table(b);
    let image = h_components(&table.maps, xbar, ybar)?;
    let p_inv = b.inv(b.product(xbar));
    // λ⁻¹_P = λ_{P⁻¹}
    let prefix = |j: usize| b.lambda(p_inv, b.product(&image[..j]));
    let recovered: Vec<usize> = (1..=image.len())
        .map(|j| if j == 1 { prefix(1) } else { b.mul(b.inv(prefix(j - 1)), prefix(j)) })
        .collect();
    Ok(recovered == ybar)
}

/// How to choose `(x̄, ȳ)` pairs for [`product_expansion_survey`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyResult {
    pub checked: usize,
    pub first_failure: Option<(Vec<usize>, Vec<usize>)>,
}

impl SurveyResult {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Runs [`check_lambda_product_expansion`] and [`check_inverse_components`]
/// over tuples of length `n`.
pub fn product_expansion_survey(b: &Brace, n: usize, sampling: Sampling) -> Result<SurveyResult> {
    if n == 0 {
        return Err(Error::InvalidExponent(n));
    }
    let k = b.order();
    let mut checked = 0;
    let mut check = |x: Vec<usize>, y: Vec<usize>| -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        checked += 1;
        let ok = check_lambda_product_expansion(b, &x, &y)? && check_inverse_components(b, &x, &y)?;
        Ok((!ok).then_some((x, y)))
    };

    let first_failure = match sampling {
        Sampling::Exhaustive => {
            let total = u32::try_from(2 * n)
                .ok()
                .and_then(|e| k.checked_pow(e))
                .ok_or(Error::BoundExceeded {
                    what: "exhaustive tuple survey",
                    size: n,
                    bound: 0,
                })?;
            let mut found = None;
            for code in 0..total {
                let mut digits = vec![0; 2 * n];
                let mut rest = code;
                for d in digits.iter_mut().rev() {
                    *d = rest % k;
                    rest /= k;
                }
                let y = digits.split_off(n);
                if let Some(f) = check(digits, y)? {
                    found = Some(f);
                    break;
                }
            }
            found
        }
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut found = None;
            for _ in 0..samples {
                let x: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
                let y: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
                if let Some(f) = check(x, y)? {
                    found = Some(f);
                    break;
                }
            }
            found
        }
    };
    Ok(SurveyResult { checked, first_failure })
}

/// Additive automorphisms of the group given by `add`, in lexicographic
/// order of their image lists.
pub fn additive_automorphisms(add: &[Vec<usize>]) -> Vec<Perm> {
    let k = add.len();
    symmetric_group(k)
        .into_iter()
        .filter(|phi| (0..k).all(|a| (0..k).all(|c| phi.apply(add[a][c]) == add[phi.apply(a)][phi.apply(c)])))
        .collect()
}

/// All left braces of order `k` found by assigning an additive automorphism
/// `λ_a` to every element and setting `a·b = a + λ_a(b)`.
///
/// Additive groups searched: `ℤ/k`, plus `ℤ/2 × ℤ/2` when `k = 4`. Results
/// are deduplicated by table equality, not up to isomorphism.
pub fn find_braces(k: usize) -> Result<Vec<Brace>> {
    if k == 0 {
        return Err(Error::EmptyDomain);
    }
    if k > BRACE_SEARCH_BOUND {
        return Err(Error::BoundExceeded {
            what: "brace search",
            size: k,
            bound: BRACE_SEARCH_BOUND,
        });
    }
    let mut additive_groups = vec![cyclic_group_table(k)];
    if k == 4 {
        additive_groups.push(klein_four_table());
    }

    let mut found: Vec<Brace> = Vec::new();
    for add in additive_groups {
        let auts = additive_automorphisms(&add);
        let mut digits = vec![0usize; k];
        loop {
            let mul: Vec<Vec<usize>> = (0..k)
                .map(|a| (0..k).map(|c| add[a][auts[digits[a]].apply(c)]).collect())
                .collect();
            if let Ok(brace) = brace_from_tables(add.clone(), mul) {
                if !found.contains(&brace) {
                    found.push(brace);
                }
            }
            // odometer, last element fastest
            let Some(pos) = (0..k).rev().find(|&i| digits[i] + 1 < auts.len()) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    Ok(found)
}
